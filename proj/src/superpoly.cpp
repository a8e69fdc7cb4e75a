#include "fuzzsuper/superpoly.hpp"

#include <cmath>
#include <stdexcept>

namespace fuzzsuper {

Complex GaussRational::to_complex() const {
  return {re.convert_to<double>(), im.convert_to<double>()};
}

GaussRational& GaussRational::operator+=(const GaussRational& o) {
  re += o.re;
  im += o.im;
  return *this;
}

GaussRational& GaussRational::operator-=(const GaussRational& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

GaussRational& GaussRational::operator*=(const GaussRational& o) {
  Rational r = re * o.re - im * o.im;
  im = re * o.im + im * o.re;
  re = std::move(r);
  return *this;
}

GaussRational& GaussRational::operator/=(const GaussRational& o) {
  const Rational n = o.re * o.re + o.im * o.im;
  if (n == 0) throw std::domain_error("division by zero Gaussian rational");
  *this *= o.conj();
  re /= n;
  im /= n;
  return *this;
}

Rational rational_from_double(double v) {
  if (!std::isfinite(v)) throw std::invalid_argument("rational_from_double: non-finite value");
  int exp = 0;
  const double mant = std::frexp(v, &exp);
  // mant * 2^53 is an exact integer
  const auto scaled = static_cast<long long>(std::ldexp(mant, 53));
  Rational r = Rational(BigInt(scaled));
  const int shift = exp - 53;
  BigInt p = 1;
  p <<= std::abs(shift);
  return shift >= 0 ? r * Rational(p) : r / Rational(p);
}

SuperPoly SuperPoly::constant(const GaussRational& c) { return monomial({}, c); }

SuperPoly SuperPoly::x(int k) {
  if (k < 0 || k > 2) throw std::out_of_range("coordinate index must be 0..2");
  Monomial m;
  (k == 0 ? m.a : k == 1 ? m.b : m.c) = 1;
  return monomial(m);
}

SuperPoly SuperPoly::theta(int alpha) {
  if (alpha < 0 || alpha > 1) throw std::out_of_range("Grassmann index must be 0 or 1");
  Monomial m;
  m.mask = alpha == 0 ? kMaskT4 : kMaskT5;
  return monomial(m);
}

SuperPoly SuperPoly::monomial(const Monomial& m, const GaussRational& c) {
  SuperPoly p;
  p.add_term(m, c);
  return p;
}

GaussRational SuperPoly::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? GaussRational{} : it->second;
}

void SuperPoly::add_term(const Monomial& m, const GaussRational& c) {
  if (m.a < 0 || m.b < 0 || m.c < 0 || m.mask < 0 || m.mask > 3)
    throw std::invalid_argument("invalid monomial");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

SuperPoly SuperPoly::component(int mask) const {
  SuperPoly r;
  for (const auto& [m, c] : terms_)
    if (m.mask == mask) r.terms_.emplace(m, c);
  return r;
}

SuperPoly SuperPoly::part(Parity p) const {
  SuperPoly r;
  for (const auto& [m, c] : terms_)
    if (m.parity() == p) r.terms_.emplace(m, c);
  return r;
}

std::optional<Parity> SuperPoly::parity() const {
  bool even = false, odd = false;
  for (const auto& [m, c] : terms_) (m.parity() == Parity::Even ? even : odd) = true;
  if (even && odd) return std::nullopt;
  return odd ? Parity::Odd : Parity::Even;
}

int SuperPoly::max_x3_degree() const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.c);
  return d;
}

SuperPoly& SuperPoly::operator+=(const SuperPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

SuperPoly& SuperPoly::operator-=(const SuperPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

SuperPoly& SuperPoly::operator*=(const GaussRational& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= s;
  return *this;
}

std::pair<int, int> grassmann_product(int mask1, int mask2) {
  if (mask1 & mask2) return {0, 0};
  // t5 on the left has to pass t4 on the right
  const int sign = ((mask1 & kMaskT5) && (mask2 & kMaskT4)) ? -1 : 1;
  return {sign, mask1 | mask2};
}

SuperPoly operator*(const SuperPoly& f, const SuperPoly& g) {
  SuperPoly r;
  for (const auto& [m1, c1] : f.terms_)
    for (const auto& [m2, c2] : g.terms_) {
      const auto [sign, mask] = grassmann_product(m1.mask, m2.mask);
      if (sign == 0) continue;
      const Monomial m{mask, m1.a + m2.a, m1.b + m2.b, m1.c + m2.c};
      r.add_term(m, sign > 0 ? c1 * c2 : -(c1 * c2));
    }
  return r;
}

SuperPoly pow(const SuperPoly& f, int n) {
  if (n < 0) throw std::invalid_argument("negative polynomial power");
  SuperPoly r = SuperPoly::one();
  for (int i = 0; i < n; ++i) r = r * f;
  return r;
}

SuperPoly d_dx(const SuperPoly& f, int k) {
  if (k < 0 || k > 2) throw std::out_of_range("coordinate index must be 0..2");
  SuperPoly r;
  for (const auto& [m, c] : f.terms()) {
    Monomial d = m;
    int& e = k == 0 ? d.a : k == 1 ? d.b : d.c;
    if (e == 0) continue;
    const int n = e;
    --e;
    r.add_term(d, c * GaussRational(n));
  }
  return r;
}

SuperPoly d_dtheta(const SuperPoly& f, int alpha) {
  if (alpha < 0 || alpha > 1) throw std::out_of_range("Grassmann index must be 0 or 1");
  const int bit = alpha == 0 ? kMaskT4 : kMaskT5;
  SuperPoly r;
  for (const auto& [m, c] : f.terms()) {
    if (!(m.mask & bit)) continue;
    Monomial d = m;
    d.mask &= ~bit;
    const bool passes_t4 = alpha == 1 && (m.mask & kMaskT4);
    r.add_term(d, passes_t4 ? -c : c);
  }
  return r;
}

}  // namespace fuzzsuper
