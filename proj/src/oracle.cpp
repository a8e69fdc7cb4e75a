#include "fuzzsuper/oracle.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "fuzzsuper/numeric.hpp"

namespace fuzzsuper {

namespace {

using G2 = std::array<std::array<GaussRational, 2>, 2>;

const std::array<G2, 3>& pauli_exact() {
  static const std::array<G2, 3> s = [] {
    const GaussRational o = 0, one = 1, i = GaussRational::i();
    std::array<G2, 3> r;
    r[0][0] = {o, one};
    r[0][1] = {one, o};
    r[1][0] = {o, -i};
    r[1][1] = {i, o};
    r[2][0] = {one, o};
    r[2][1] = {o, -one};
    return r;
  }();
  return s;
}

G2 mul2(const G2& a, const G2& b) {
  G2 r;
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k)
      for (int l = 0; l < 2; ++l) r[i][k] += a[i][l] * b[l][k];
  return r;
}

int eps(int i, int j, int k) { return static_cast<int>(levi_civita(i, j, k)); }

const GaussRational kHalf{Rational(1, 2), 0};

double rho_power(const Rational& rho, int k) { return std::pow(rho.convert_to<double>(), k); }

SuperPoly x_plus() { return SuperPoly::x(0) + GaussRational::i() * SuperPoly::x(1); }

}  // namespace

SuperPoly defining_polynomial(const Rational& rho) {
  SuperPoly p;
  for (int k = 0; k < 3; ++k) p += SuperPoly::x(k) * SuperPoly::x(k);
  p += GaussRational(2) * (SuperPoly::theta(0) * SuperPoly::theta(1));
  p -= SuperPoly::constant(GaussRational(rho * rho));
  return p;
}

SuperPoly normal_form(const SuperPoly& f, const Rational& rho) {
  const SuperPoly sub = SuperPoly::constant(GaussRational(rho * rho)) - SuperPoly::x(0) * SuperPoly::x(0) -
                        SuperPoly::x(1) * SuperPoly::x(1) -
                        GaussRational(2) * (SuperPoly::theta(0) * SuperPoly::theta(1));
  SuperPoly done;
  SuperPoly work = f;
  while (!work.is_zero()) {
    SuperPoly next;
    for (const auto& [m, c] : work.terms()) {
      if (m.c < 2) {
        done.add_term(m, c);
        continue;
      }
      Monomial rest = m;
      rest.c -= 2;
      next += SuperPoly::monomial(rest, c) * sub;
    }
    work = std::move(next);
  }
  return done;
}

Rational sphere_moment(int a, int b, int c) {
  if (a < 0 || b < 0 || c < 0) throw std::invalid_argument("sphere_moment: negative exponent");
  if (a % 2 || b % 2 || c % 2) return 0;
  auto dfac = [](int n) {
    BigInt r = 1;
    for (int k = n; k >= 2; k -= 2) r *= k;
    return r;
  };
  return Rational(dfac(a - 1) * dfac(b - 1) * dfac(c - 1)) / Rational(dfac(a + b + c + 1));
}

GaussRational berezin_integral_over_2pi(const SuperPoly& f, const Rational& rho) {
  if (rho <= 0) throw std::invalid_argument("radius must be positive");
  GaussRational s;
  for (const auto& [m, c] : f.terms()) {
    if (m.mask == kMaskT4 || m.mask == kMaskT5) continue;
    const Rational mom = sphere_moment(m.a, m.b, m.c);
    if (mom == 0) continue;
    const int n = m.degree();
    Rational rn = 1;
    for (int k = 0; k < n; ++k) rn *= rho;
    if (m.mask == kMaskNone)
      s += c * GaussRational(Rational(n + 1) * rn / rho * mom);
    else
      s -= c * GaussRational(rn * rho * mom);
  }
  return s;
}

Complex berezin_sphere_integral(const SuperPoly& f, const Rational& rho) {
  return 2.0 * M_PI * berezin_integral_over_2pi(f, rho).to_complex();
}

SuperPoly cross_involution(const SuperPoly& f) {
  SuperPoly r;
  for (const auto& [m, c] : f.terms()) {
    Monomial t = m;
    GaussRational v = c.conj();
    if (m.mask == kMaskT4) {
      t.mask = kMaskT5;
    } else if (m.mask == kMaskT5) {
      t.mask = kMaskT4;
      v = -v;
    }
    r.add_term(t, v);
  }
  return r;
}

GaussRational inner_S_exact(const SuperPoly& f, const SuperPoly& g, const Rational& rho) {
  const SuperPoly prod = cross_involution(normal_form(f, rho)) * normal_form(g, rho);
  return GaussRational(rho) * berezin_integral_over_2pi(prod, rho);
}

Complex inner_S(const SuperPoly& f, const SuperPoly& g, const Rational& rho) {
  return inner_S_exact(f, g, rho).to_complex();
}

SuperPoly vector_field_action(int a, const SuperPoly& f) {
  if (a < 0 || a > 4) throw std::out_of_range("osp generator index must be 0..4");
  const auto& sig = pauli_exact();
  SuperPoly r;
  if (a < 3) {
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        if (const int e = eps(a, j, k); e != 0)
          r += GaussRational(0, -e) * (SuperPoly::x(j) * d_dx(f, k));
    for (int al = 0; al < 2; ++al)
      for (int be = 0; be < 2; ++be)
        if (!sig[a][al][be].is_zero())
          r += kHalf * sig[a][al][be] * (SuperPoly::theta(al) * d_dtheta(f, be));
    return r;
  }
  const int al = a - 3;
  for (int k = 0; k < 3; ++k) {
    const G2 m = mul2(sig[1], sig[k]);
    for (int be = 0; be < 2; ++be) {
      if (!m[al][be].is_zero())
        r += kHalf * GaussRational::i() * m[al][be] * (SuperPoly::x(k) * d_dtheta(f, be));
      if (!sig[k][be][al].is_zero())
        r -= kHalf * sig[k][be][al] * (SuperPoly::theta(be) * d_dx(f, k));
    }
  }
  return r;
}

SuperPoly body_vector_field(int i, const SuperPoly& f) {
  if (i < 0 || i > 2) throw std::out_of_range("sl(2) generator index must be 0..2");
  SuperPoly r;
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k)
      if (const int e = eps(i, j, k); e != 0) r += GaussRational(0, -e) * (SuperPoly::x(j) * d_dx(f, k));
  return r;
}

SuperPoly body_map_classical(const SuperPoly& f, const Rational& rho) {
  return normal_form(f.component(kMaskNone), rho).component(kMaskNone);
}

GaussRational body_inner_exact(const SuperPoly& f, const SuperPoly& g, const Rational& rho) {
  if (f.component(kMaskNone) != f || g.component(kMaskNone) != g)
    throw std::invalid_argument("body_inner_exact: arguments must be Grassmann-free");
  GaussRational s;
  for (const auto& [m1, c1] : f.terms())
    for (const auto& [m2, c2] : g.terms()) {
      const Rational mom = sphere_moment(m1.a + m2.a, m1.b + m2.b, m1.c + m2.c);
      if (mom == 0) continue;
      Rational rn = 1;
      for (int k = 0; k < m1.degree() + m2.degree(); ++k) rn *= rho;
      s += c1.conj() * c2 * GaussRational(rn * mom);
    }
  return s;
}

NumericPoly to_numeric(const ScaledPoly& p) {
  NumericPoly r;
  for (const auto& [m, c] : p.poly.terms()) r[m] = p.scale * c.to_complex();
  return r;
}

double max_abs_diff(const NumericPoly& a, const NumericPoly& b) {
  double r = 0.0;
  for (const auto& [m, c] : a) {
    auto it = b.find(m);
    r = std::max(r, std::abs(c - (it == b.end() ? Complex{} : it->second)));
  }
  for (const auto& [m, c] : b)
    if (!a.contains(m)) r = std::max(r, std::abs(c));
  return r;
}

Complex inner_S(const ScaledPoly& f, const ScaledPoly& g, const Rational& rho) {
  return f.scale * g.scale * inner_S(f.poly, g.poly, rho);
}

ScaledPoly classical_harmonic(const HarmonicLabel& label, const Rational& rho) {
  if (!label.valid()) throw std::invalid_argument("classical_harmonic: invalid label");
  const int j2 = label.j2;
  ScaledPoly y;
  if (j2 % 2 == 0) {
    const int j = j2 / 2;
    const long double lg = 0.5L * log_factorial(j2) - j * std::log(2.0L) - log_factorial(j);
    y.scale = static_cast<double>(std::exp(lg)) / rho_power(rho, j);
    y.poly = pow(x_plus(), j);
  } else {
    const int h = (j2 - 1) / 2;  // j - 1/2
    const long double lg = 0.5L * log_factorial(j2) - h * std::log(2.0L) - log_factorial(h);
    y.scale = static_cast<double>(std::exp(lg)) / rho_power(rho, h + 2);
    y.poly = pow(x_plus(), h) *
             (SuperPoly::x(2) * SuperPoly::theta(0) + x_plus() * SuperPoly::theta(1));
  }
  y.poly = normal_form(y.poly, rho);
  if (label.mu == 1) y.poly = normal_form(vector_field_action(kJ5, y.poly), rho);
  for (int k = 0; k < (label.l2() - label.m2) / 2; ++k) {
    const SuperPoly lowered =
        vector_field_action(kJ1, y.poly) - GaussRational::i() * vector_field_action(kJ2, y.poly);
    y.poly = normal_form(lowered, rho);
  }
  y.scale *= lowering_prefactor(label);
  return y;
}

ScaledPoly classical_spherical_harmonic(int j, int m, const Rational& rho) {
  if (j < 0 || std::abs(m) > j) throw std::invalid_argument("classical_spherical_harmonic: invalid label");
  ScaledPoly y;
  const long double lg = 0.5L * log_factorial(2 * j + 1) - j * std::log(2.0L) - log_factorial(j);
  y.scale = static_cast<double>(std::exp(lg)) / rho_power(rho, j);
  y.poly = body_map_classical(pow(x_plus(), j), rho);
  for (int k = 0; k < j - m; ++k) {
    const SuperPoly lowered =
        body_vector_field(kJ1, y.poly) - GaussRational::i() * body_vector_field(kJ2, y.poly);
    y.poly = body_map_classical(lowered, rho);
  }
  const long double ln = log_factorial(j + m) - log_factorial(2 * j) - log_factorial(j - m);
  y.scale *= static_cast<double>(std::exp(0.5L * ln));
  return y;
}

StructureConstant structure_constant_classical(int j1_2, int j2_2) {
  if (j1_2 < 0 || j2_2 < 0) throw std::invalid_argument("structure_constant_classical: negative superspin");
  const Rational rho = 1;
  const ScaledPoly y1 = classical_harmonic({j1_2, 0, j1_2}, rho);
  const ScaledPoly y2 = classical_harmonic({j2_2, 0, j2_2}, rho);
  const ScaledPoly y12 = classical_harmonic({j1_2 + j2_2, 0, j1_2 + j2_2}, rho);
  const SuperPoly prod = normal_form(y1.poly * y2.poly, rho);
  StructureConstant out;
  if (prod.is_zero()) return out;
  // exact proportionality constant between the polynomial parts
  const auto& [m0, c0] = *y12.poly.terms().begin();
  const GaussRational kappa = prod.coeff(m0) / c0;
  if (prod == y12.poly * kappa) {
    out.value = (kappa.to_complex() * (y1.scale * y2.scale / y12.scale)).real();
    out.residual = std::abs(kappa.im.convert_to<double>());
    return out;
  }
  const ScaledPoly p{y1.scale * y2.scale, prod};
  const Complex c = inner_S(y12, p, rho);
  out.value = c.real();
  out.residual = max_abs_diff(to_numeric(p), to_numeric({y12.scale * c.real(), y12.poly}));
  return out;
}

std::map<HarmonicLabel, Complex> classical_expansion(const SuperPoly& f, int max_j2, const Rational& rho) {
  std::map<HarmonicLabel, Complex> out;
  const ScaledPoly fs{1.0, f};
  for (int j2 = 0; j2 <= max_j2; ++j2)
    for (const auto& l : multiplet_labels(j2)) {
      const Complex c = static_cast<double>(l.pseudo_norm()) * inner_S(classical_harmonic(l, rho), fs, rho);
      if (std::abs(c) > 0.0) out[l] = c;
    }
  return out;
}

}  // namespace fuzzsuper
