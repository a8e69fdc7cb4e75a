#pragma once

// Classical polynomial model of the (2|2)-supersphere of radius rho:
// normal form modulo the defining ideal, Berezin-spherical integration,
// involutions, the osp(1|2) vector fields, classical harmonics and structure constants.

#include <map>

#include "fuzzsuper/fuzzy.hpp"
#include "fuzzsuper/superpoly.hpp"

namespace fuzzsuper {

/// sum_k (x^k)^2 + 2 t4 t5 - rho^2.
SuperPoly defining_polynomial(const Rational& rho);

/// Reduces (x3)^2 -> rho^2 - x1^2 - x2^2 - 2 t4 t5 until every monomial has x3-degree <= 1.
SuperPoly normal_form(const SuperPoly& f, const Rational& rho);

/// (1/4pi) * integral of x^a y^b z^c over the unit sphere.
Rational sphere_moment(int a, int b, int c);

/// Berezin-spherical integral divided by 2 pi, exact.
GaussRational berezin_integral_over_2pi(const SuperPoly& f, const Rational& rho);
Complex berezin_sphere_integral(const SuperPoly& f, const Rational& rho);

/// f0* + f4* t5 - f5* t4 + f45* t4 t5.
SuperPoly cross_involution(const SuperPoly& f);

/// (rho / 2 pi) I(normal_form(f)^x normal_form(g)), exact.
GaussRational inner_S_exact(const SuperPoly& f, const SuperPoly& g, const Rational& rho);
Complex inner_S(const SuperPoly& f, const SuperPoly& g, const Rational& rho);

/// The first-order graded differential operator J_A acting on R^{3|2}, A = 0..4.
SuperPoly vector_field_action(int a, const SuperPoly& f);

/// J_i = -i sum eps_ijk x^j d_k on R^3, i = 0..2.
SuperPoly body_vector_field(int i, const SuperPoly& f);

/// Sets t4 = t5 = 0 and reduces modulo sum (x^k)^2 - rho^2.
SuperPoly body_map_classical(const SuperPoly& f, const Rational& rho);

/// (1/4pi) integral of f* g over the sphere of radius rho (purely even inputs), exact.
GaussRational body_inner_exact(const SuperPoly& f, const SuperPoly& g, const Rational& rho);

/// scale * poly, with an exact polynomial and a floating normalization.
struct ScaledPoly {
  double scale = 1.0;
  SuperPoly poly;
};

using NumericPoly = std::map<Monomial, Complex>;
NumericPoly to_numeric(const ScaledPoly& p);
double max_abs_diff(const NumericPoly& a, const NumericPoly& b);

Complex inner_S(const ScaledPoly& f, const ScaledPoly& g, const Rational& rho);

/// Classical superspherical harmonic (in normal form), built from the s = 0 highest
/// weight polynomials and lowered by J5 then J-.
ScaledPoly classical_harmonic(const HarmonicLabel& label, const Rational& rho);

/// Normalized spherical harmonic Y_{j,m} on the sphere of radius rho.
ScaledPoly classical_spherical_harmonic(int j, int m, const Rational& rho);

/// c_{j1 j2}: Y_{j1} Y_{j2} = c Y_{j1+j2} for the highest weight harmonics (rho = 1).
/// residual is 0 when the product is exactly proportional in normal form.
StructureConstant structure_constant_classical(int j1_2, int j2_2);

/// Expansion coefficients of f in the classical harmonics with j <= max_j2/2:
/// pseudo_norm(L) <Y_L | f>.
std::map<HarmonicLabel, Complex> classical_expansion(const SuperPoly& f, int max_j2, const Rational& rho);

}  // namespace fuzzsuper
