#pragma once

// Exact polynomial superfunctions on R^{3|2}: elements of C[x1,x2,x3] (x) Lambda(t4,t5)
// with Gaussian-rational coefficients, plus the text format used by the CLI.

#include <compare>
#include <map>
#include <optional>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "fuzzsuper/graded.hpp"

namespace fuzzsuper {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

struct GaussRational {
  Rational re = 0;
  Rational im = 0;

  GaussRational() = default;
  GaussRational(Rational r) : re(std::move(r)) {}  // NOLINT(google-explicit-constructor)
  GaussRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
  GaussRational(int r) : re(r) {}  // NOLINT(google-explicit-constructor)

  static GaussRational i() { return {0, 1}; }

  bool is_zero() const { return re == 0 && im == 0; }
  GaussRational conj() const { return {re, -im}; }
  Complex to_complex() const;

  GaussRational& operator+=(const GaussRational& o);
  GaussRational& operator-=(const GaussRational& o);
  GaussRational& operator*=(const GaussRational& o);
  GaussRational& operator/=(const GaussRational& o);
  friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
  friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
  friend GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
  friend GaussRational operator/(GaussRational a, const GaussRational& b) { return a /= b; }
  GaussRational operator-() const { return {-re, -im}; }
  friend bool operator==(const GaussRational&, const GaussRational&) = default;
};

/// Exact rational equal to the binary value of a finite double.
Rational rational_from_double(double v);

/// x1^a x2^b x3^c t^mask, with mask bit 0 = t4 and bit 1 = t5, Grassmann factors ordered t4 t5.
struct Monomial {
  int mask = 0;
  int a = 0;
  int b = 0;
  int c = 0;

  int degree() const { return a + b + c; }
  Parity parity() const { return (mask == 1 || mask == 2) ? Parity::Odd : Parity::Even; }
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

inline constexpr int kMaskNone = 0, kMaskT4 = 1, kMaskT5 = 2, kMaskT45 = 3;

class SuperPoly {
 public:
  using Terms = std::map<Monomial, GaussRational>;

  SuperPoly() = default;
  static SuperPoly constant(const GaussRational& c);
  static SuperPoly one() { return constant(1); }
  /// Coordinate x^{k+1}, k = 0..2.
  static SuperPoly x(int k);
  /// Grassmann generator t4 (alpha = 0) or t5 (alpha = 1).
  static SuperPoly theta(int alpha);
  static SuperPoly monomial(const Monomial& m, const GaussRational& c = 1);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  GaussRational coeff(const Monomial& m) const;
  void add_term(const Monomial& m, const GaussRational& c);

  /// Part carried by one Grassmann monomial (f_0, f_4, f_5, f_45), mask kept.
  SuperPoly component(int mask) const;
  SuperPoly part(Parity p) const;
  /// nullopt for mixed elements; zero reports Even.
  std::optional<Parity> parity() const;
  int max_x3_degree() const;

  SuperPoly& operator+=(const SuperPoly& o);
  SuperPoly& operator-=(const SuperPoly& o);
  SuperPoly& operator*=(const GaussRational& s);
  friend SuperPoly operator+(SuperPoly a, const SuperPoly& b) { return a += b; }
  friend SuperPoly operator-(SuperPoly a, const SuperPoly& b) { return a -= b; }
  friend SuperPoly operator*(SuperPoly a, const GaussRational& s) { return a *= s; }
  friend SuperPoly operator*(const GaussRational& s, SuperPoly a) { return a *= s; }
  /// Graded-commutative product.
  friend SuperPoly operator*(const SuperPoly& f, const SuperPoly& g);
  friend bool operator==(const SuperPoly&, const SuperPoly&) = default;

 private:
  Terms terms_;
};

SuperPoly pow(const SuperPoly& f, int n);

/// Product of two Grassmann monomials: (sign, mask), sign 0 if they share a generator.
std::pair<int, int> grassmann_product(int mask1, int mask2);

/// d/dx^{k+1}.
SuperPoly d_dx(const SuperPoly& f, int k);
/// Left derivative d/dt^{4+alpha}.
SuperPoly d_dtheta(const SuperPoly& f, int alpha);

/// Text form: `c * x1^a x2^b x3^c t4 t5` terms joined by " + ".
/// Coefficients: `p/q`, `p/qi`, or `(p/q+r/si)`.
std::string to_text(const SuperPoly& f);
/// Accepts the output of to_text plus free use of signs, spacing, and omitted
/// unit coefficients. Throws std::invalid_argument with a position on bad input.
SuperPoly parse_superpoly(const std::string& text);
std::string to_text(const GaussRational& c);

}  // namespace fuzzsuper
