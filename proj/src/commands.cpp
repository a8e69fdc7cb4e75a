#include "fuzzsuper/commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "fuzzsuper/calculus.hpp"
#include "fuzzsuper/cohomology.hpp"
#include "fuzzsuper/oracle.hpp"

namespace fuzzsuper {

namespace {

struct Check {
  std::string suite;
  std::string name;
  std::optional<int> q;
  double residual = 0.0;
  double tol = 0.0;
  std::string note;
  bool passed() const { return std::isfinite(residual) && residual <= tol; }
};

using Checks = std::vector<Check>;

double sgn(int e) { return e % 2 == 0 ? 1.0 : -1.0; }
int par(Parity p) { return to_int(p); }

std::mt19937_64 make_rng(std::uint64_t seed, int suite, int q) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(suite), static_cast<std::uint32_t>(q)};
  return std::mt19937_64(seq);
}

Complex random_complex(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double re = u(rng);
  return {re, u(rng)};
}

FuzzyElement random_element(const FuzzySuperSphere& s, std::mt19937_64& rng) {
  FuzzyElement e;
  e.q = s.q();
  for (const auto& l : s.labels()) e.coeffs[l] = random_complex(rng);
  return e;
}

GradedMatrix random_matrix(GradedDims dims, std::mt19937_64& rng) {
  const auto n = static_cast<Eigen::Index>(dims.total());
  Matrix m(n, n);
  for (Eigen::Index c = 0; c < n; ++c)
    for (Eigen::Index r = 0; r < n; ++r) m(r, c) = random_complex(rng);
  return {dims, std::move(m)};
}

// Contexts shared by the suites of one q.
struct Level {
  int q;
  FuzzySuperSphere super_sphere;
  FuzzySphere body_sphere;
  ContextPtr super_ctx;
  ContextPtr body_ctx;

  Level(int q_, double rho)
      : q(q_),
        super_sphere(FuzzySuperSphere::build(q_, rho)),
        body_sphere(FuzzySphere::build(q_, rho)),
        super_ctx(DerivationContext::from_super(super_sphere.rep())),
        body_ctx(DerivationContext::from_body(body_sphere.rep())) {}
};

void suite_dimensions(const Level& lv, Checks& out) {
  const int q = lv.q;
  const LabelCounts c = count_labels(q);
  const auto want_even = static_cast<double>(q * q + (q + 1) * (q + 1));
  const auto want_odd = static_cast<double>(2 * q * (q + 1));
  const auto want_total = static_cast<double>((2 * q + 1) * (2 * q + 1));
  const auto n = static_cast<double>(lv.super_sphere.dims().total());
  out.push_back({"dimensions", "even_label_count", q, std::abs(static_cast<double>(c.even) - want_even), 0.0, {}});
  out.push_back({"dimensions", "odd_label_count", q, std::abs(static_cast<double>(c.odd) - want_odd), 0.0, {}});
  out.push_back({"dimensions", "total_label_count", q, std::abs(static_cast<double>(c.total()) - want_total), 0.0, {}});
  out.push_back({"dimensions", "algebra_dimension", q, std::abs(n * n - want_total), 0.0, {}});
}

void suite_highest_weight(const Level& lv, Checks& out, double tol) {
  const auto& s = lv.super_sphere;
  const auto& rep = s.rep();
  double norm = 0.0, annihilated = 0.0, weight = 0.0;
  for (int j2 = 0; j2 <= 2 * lv.q; ++j2) {
    const GradedMatrix y = nc_highest_weight(rep, lv.q, j2);
    norm = std::max(norm, std::abs(indefinite_inner(y, y) - 1.0));
    annihilated = std::max(annihilated, graded_commutator(rep.Jplus(), Parity::Even, y).max_abs());
    annihilated = std::max(annihilated, s.adjoint_action(kJ4, y).max_abs());
  }
  for (std::size_t i = 0; i < s.labels().size(); ++i)
    weight = std::max(weight, (s.adjoint_action(kJ3, s.harmonics()[i]) - (0.5 * s.labels()[i].m2) * s.harmonics()[i]).max_abs());
  out.push_back({"highest-weight", "hw_unit_norm", lv.q, norm, tol, {}});
  out.push_back({"highest-weight", "hw_annihilated_by_Jplus_J4", lv.q, annihilated, tol, {}});
  out.push_back({"highest-weight", "J3_weight", lv.q, weight, tol, {}});
}

void suite_harmonics(const Level& lv, Checks& out, double tol, std::uint64_t seed) {
  const auto& s = lv.super_sphere;
  const std::size_t n = s.labels().size();
  double gram = 0.0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const double want = a == b ? s.labels()[a].pseudo_norm() : 0.0;
      gram = std::max(gram, std::abs(indefinite_inner(s.harmonics()[a], s.harmonics()[b]) - want));
    }
  out.push_back({"harmonics", "gram_signed_identity", lv.q, gram, tol, {}});
  auto rng = make_rng(seed, 3, lv.q);
  const FuzzyElement e = random_element(s, rng);
  out.push_back({"harmonics", "psi_round_trip", lv.q, psi_q_inv(psi_q(e, s), s).max_abs_diff(e), tol, {}});
  double inter = 0.0;
  for (int a = 0; a < kOspDim; ++a)
    inter = std::max(inter, (psi_q(apply_generator(a, e), s) - s.adjoint_action(a, psi_q(e, s))).max_abs());
  out.push_back({"harmonics", "intertwiner", lv.q, inter, tol, {}});
  const GradedMatrix f = random_matrix(s.dims(), rng);
  const GradedMatrix g = random_matrix(s.dims(), rng);
  double deriv = 0.0;
  for (Parity pf : {Parity::Even, Parity::Odd})
    for (int a = 0; a < kOspDim; ++a) {
      const Parity pa = a >= kJ4 ? Parity::Odd : Parity::Even;
      const GradedMatrix fh = f.part(pf);
      const GradedMatrix lhs = s.adjoint_action(a, fh * g);
      const GradedMatrix rhs = s.adjoint_action(a, fh) * g + sign_of(pa, pf) * (fh * s.adjoint_action(a, g));
      deriv = std::max(deriv, (lhs - rhs).max_abs());
    }
  out.push_back({"harmonics", "ad_graded_derivation", lv.q, deriv, tol, {}});
}

void suite_casimir(const Level& lv, Checks& out, double tol) {
  const auto& s = lv.super_sphere;
  out.push_back({"casimir", "supersphere_relation", lv.q, supersphere_relation_residual(s), tol, {}});
  out.push_back({"casimir", "sphere_relation", lv.q, sphere_relation_residual(lv.body_sphere), tol, {}});
  const double j = 0.5 * lv.q;
  const GradedMatrix c = osp_casimir(s.rep()) - (j * (j + 0.5)) * GradedMatrix::identity(s.dims());
  out.push_back({"casimir", "osp_casimir_scalar", lv.q, c.max_abs(), tol, {}});
}

void suite_gradestar(const Level& lv, Checks& out, double tol) {
  out.push_back({"gradestar", "irrep_ddagger0_odd_hw", lv.q, verify_grade_star(build_irrep(lv.q, Parity::Odd), 0), tol, {}});
  out.push_back({"gradestar", "irrep_ddagger1_even_hw", lv.q, verify_grade_star(build_irrep(lv.q, Parity::Even), 1), tol, {}});
  out.push_back({"gradestar", "adjoint_ddagger1", lv.q, adjoint_grade_star_residual(lv.super_sphere, 1), tol, {}});
}

void suite_oracle(const RunConfig& cfg, Checks& out, double tol) {
  const Rational rho = rational_from_double(cfg.rho);
  out.push_back({"oracle", "unit_norm", std::nullopt, std::abs(inner_S(SuperPoly::one(), SuperPoly::one(), rho) - 1.0), tol, {}});
  std::vector<HarmonicLabel> labels;
  for (int j2 = 0; j2 <= 4; ++j2)
    for (const auto& l : multiplet_labels(j2)) labels.push_back(l);
  std::vector<ScaledPoly> ys;
  for (const auto& l : labels) ys.push_back(classical_harmonic(l, rho));
  double gram = 0.0;
  for (std::size_t a = 0; a < ys.size(); ++a)
    for (std::size_t b = 0; b < ys.size(); ++b) {
      const double want = a == b ? labels[a].pseudo_norm() : 0.0;
      gram = std::max(gram, std::abs(inner_S(ys[a], ys[b], rho) - want));
    }
  out.push_back({"oracle", "classical_gram_signed_identity", std::nullopt, gram, std::min(tol, 1e-12), "j <= 2"});
  auto rng = make_rng(cfg.seed, 6, 0);
  std::uniform_int_distribution<int> coef(-5, 5), expo(0, 3), mask(0, 3);
  const SuperPoly ideal = defining_polynomial(rho);
  double ideal_res = 0.0;
  for (int k = 0; k < 50; ++k) {
    SuperPoly g;
    for (int t = 0; t < 4; ++t) g.add_term({mask(rng), expo(rng), expo(rng), expo(rng)}, GaussRational(coef(rng), coef(rng)));
    ideal_res = std::max(ideal_res, std::abs(berezin_integral_over_2pi(ideal * g, rho).to_complex()));
  }
  out.push_back({"oracle", "integral_vanishes_on_ideal", std::nullopt, ideal_res, 0.0, "50 random elements, exact"});
  double vf = 0.0;
  for (int a = 0; a < kOspDim; ++a) vf = std::max(vf, normal_form(vector_field_action(a, ideal), rho).is_zero() ? 0.0 : 1.0);
  out.push_back({"oracle", "vector_fields_preserve_ideal", std::nullopt, vf, 0.0, "exact"});
}

void suite_calculus(const Level& lv, Checks& out, double tol, std::uint64_t seed) {
  const auto& ctx = lv.super_ctx;
  auto rng = make_rng(seed, 7, lv.q);
  double dd = 0.0, rec = 0.0, i12 = 0.0, i13 = 0.0, dl = 0.0;
  double lrule = 0.0, irule = 0.0, drule = 0.0;
  const int n = ctx->size();
  for (int p = 0; p <= 3; ++p)
    for (Parity pw : {Parity::Even, Parity::Odd}) {
      const SuperForm w = random_superform(ctx, p, rng, pw);
      const int wp = par(pw);
      const SuperForm dw = exterior_d(w);
      dd = std::max(dd, exterior_d(dw).max_abs());
      rec = std::max(rec, (dw - exterior_d_recursive(w)).max_abs());
      for (int a = 0; a < n; ++a) {
        const int pa = par(ctx->parity(a));
        dl = std::max(dl, (exterior_d(lie_derivative(a, w)) - lie_derivative(a, dw)).max_abs());
        if (p == 0) continue;
        for (int b = 0; b < n; ++b) {
          const int pb = par(ctx->parity(b));
          if (p >= 2)
            i12 = std::max(i12, (interior(a, interior(b, w)) + sgn(pa * pb) * interior(b, interior(a, w))).max_abs());
          SuperForm rhs(ctx, p - 1);
          for (int c = 0; c < n; ++c)
            if (ctx->c(c, a, b) != 0.0) rhs += ctx->c(c, a, b) * interior(c, w);
          const SuperForm lhs = lie_derivative(a, interior(b, w)) - interior(b, lie_derivative(a, w));
          i13 = std::max(i13, (lhs - sgn(pa * wp) * rhs).max_abs());
        }
      }
      for (int p2 = 0; p + p2 <= 3; ++p2) {
        const Parity pw2 = p2 % 2 == 0 ? Parity::Odd : Parity::Even;
        const SuperForm w2 = random_superform(ctx, p2, rng, pw2);
        const SuperForm ww = wedge(w, w2);
        drule = std::max(drule, (exterior_d(ww) - wedge(dw, w2) - sgn(p) * wedge(w, exterior_d(w2))).max_abs());
        for (int a = 0; a < n; ++a) {
          const int pa = par(ctx->parity(a));
          lrule = std::max(lrule, (lie_derivative(a, ww) - wedge(lie_derivative(a, w), w2) -
                                   sgn(pa * wp) * wedge(w, lie_derivative(a, w2))).max_abs());
          if (p + p2 == 0) continue;
          SuperForm t1(ctx, p + p2 - 1), t2(ctx, p + p2 - 1);
          if (p >= 1) t1 = wedge(interior(a, w), w2);
          if (p2 >= 1) t2 = wedge(w, interior(a, w2));
          irule = std::max(irule, (interior(a, ww) - sgn(pa * par(pw2)) * t1 - sgn(p) * t2).max_abs());
        }
      }
    }
  double dlam = 0.0;
  for (int a = 0; a < n; ++a) {
    SuperForm rhs(ctx, 2);
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (ctx->c(a, b, c) != 0.0) rhs += (0.5 * ctx->c(a, b, c)) * wedge(lambda(ctx, c), lambda(ctx, b));
    dlam = std::max(dlam, (exterior_d(lambda(ctx, a)) - rhs).max_abs());
  }
  out.push_back({"calculus", "d_squared_zero", lv.q, dd, tol, "p <= 3"});
  out.push_back({"calculus", "d_matches_recursion", lv.q, rec, tol, {}});
  out.push_back({"calculus", "interior_graded_anticommute", lv.q, i12, tol, {}});
  out.push_back({"calculus", "lie_interior_commutator", lv.q, i13, tol, {}});
  out.push_back({"calculus", "d_commutes_with_lie", lv.q, dl, tol, {}});
  out.push_back({"calculus", "leibniz_lie", lv.q, lrule, tol, {}});
  out.push_back({"calculus", "leibniz_interior", lv.q, irule, tol, {}});
  out.push_back({"calculus", "leibniz_d", lv.q, drule, tol, {}});
  out.push_back({"calculus", "dlambda_structure_constants", lv.q, dlam, tol, {}});
}

void suite_maurer_cartan(const Level& lv, Checks& out, double tol, std::uint64_t seed) {
  const auto& ctx = lv.super_ctx;
  const SuperForm mc = maurer_cartan(ctx);
  out.push_back({"maurer-cartan", "structure_equation", lv.q, (exterior_d(mc) - wedge(mc, mc)).max_abs(), tol, {}});
  auto rng = make_rng(seed, 8, lv.q);
  double d30 = 0.0;
  for (Parity pf : {Parity::Even, Parity::Odd}) {
    const SuperForm f = random_superform(ctx, 0, rng, pf);
    d30 = std::max(d30, (exterior_d(f) - (wedge(mc, f) - wedge(f, mc))).max_abs());
  }
  out.push_back({"maurer-cartan", "d_as_commutator", lv.q, d30, tol, {}});
  double inv = 0.0;
  for (int a = 0; a < ctx->size(); ++a) inv = std::max(inv, lie_derivative(a, mc).max_abs());
  out.push_back({"maurer-cartan", "invariance", lv.q, inv, tol, {}});
  // basis independence under a generic parity-preserving change of basis
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix m = Matrix::Zero(ctx->size(), ctx->size());
  for (int a = 0; a < ctx->size(); ++a)
    for (int b = 0; b < ctx->size(); ++b)
      if (ctx->parity(a) == ctx->parity(b)) m(a, b) = Complex(u(rng), u(rng)) + (a == b ? 2.0 : 0.0);
  const ContextPtr moved = ctx->transformed(m);
  const SuperForm mc2 = maurer_cartan(moved);
  // compare values on the original basis derivations: D_a = sum_b minv(b, a) D'_b
  const Matrix minv = m.inverse();
  double indep = 0.0;
  for (int a = 0; a < ctx->size(); ++a) {
    std::vector<Complex> coeffs(static_cast<std::size_t>(ctx->size()));
    for (int b = 0; b < ctx->size(); ++b) coeffs[static_cast<std::size_t>(b)] = minv(b, a);
    indep = std::max(indep, (eval_superform(mc2, {coeffs}) - mc.value(std::vector<int>{a})).max_abs());
  }
  out.push_back({"maurer-cartan", "basis_independence", lv.q, indep, tol, {}});
  if (lv.q <= 4) {
    const auto dim = static_cast<double>(invariant_form_dimension(ctx, 1));
    out.push_back({"maurer-cartan", "invariant_one_forms_dimension_minus_one", lv.q, std::abs(dim - 1.0), 0.0, {}});
  }
}

void suite_body(const Level& lv, Checks& out, double tol, std::uint64_t seed) {
  const auto& s = lv.super_sphere;
  const auto& b = lv.body_sphere;
  const auto xs = coordinates(s);
  const auto xb = sphere_coordinates(b);
  double coord = 0.0, theta = 0.0;
  for (int k = 0; k < 3; ++k) coord = std::max(coord, (body_map_fuzzy(xs.x[static_cast<std::size_t>(k)], s, b) - xb[static_cast<std::size_t>(k)]).max_abs());
  for (const auto& t : xs.theta) theta = std::max(theta, body_map_fuzzy(t, s, b).max_abs());
  out.push_back({"body", "coordinates_map_to_sphere", lv.q, coord, tol, {}});
  out.push_back({"body", "odd_coordinates_vanish", lv.q, theta, tol, {}});
  auto rng = make_rng(seed, 9, lv.q);
  const GradedMatrix f = random_matrix(s.dims(), rng);
  double equi = 0.0;
  for (int k = 0; k < 3; ++k)
    equi = std::max(equi, (body_map_fuzzy(s.adjoint_action(k, f), s, b) - b.adjoint_action(k, body_map_fuzzy(f, s, b))).max_abs());
  out.push_back({"body", "sl2_equivariance", lv.q, equi, tol, {}});
  const std::size_t n = s.dims().total();
  Matrix bm(static_cast<Eigen::Index>(b.dims().total() * b.dims().total()), static_cast<Eigen::Index>(n * n));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i)
      bm.col(static_cast<Eigen::Index>(i + j * n)) = vectorize(body_map_fuzzy(GradedMatrix::unit(s.dims(), i, j), s, b));
  const std::size_t rank = numerical_rank(bm);
  const double want_kernel = std::pow(2.0 * lv.q + 1.0, 2) - std::pow(lv.q + 1.0, 2);
  out.push_back({"body", "kernel_dimension", lv.q, std::abs(static_cast<double>(bm.cols()) - static_cast<double>(rank) - want_kernel), 0.0, {}});
  double cochain = 0.0;
  for (int p = 0; p <= 2; ++p) {
    const SuperForm w = random_superform(lv.super_ctx, p, rng);
    const SuperForm lhs = body_cochain_map(exterior_d(w), s, b, lv.body_ctx);
    const SuperForm rhs = exterior_d(body_cochain_map(w, s, b, lv.body_ctx));
    cochain = std::max(cochain, (lhs - rhs).max_abs());
  }
  out.push_back({"body", "cochain_map", lv.q, cochain, tol, "p <= 2"});
}

Json check_to_json(const Check& c) {
  return {{"suite", c.suite},
          {"check", c.name},
          {"q", c.q ? Json(*c.q) : Json(nullptr)},
          {"residual", c.residual},
          {"tolerance", c.tol},
          {"passed", c.passed()},
          {"note", c.note}};
}

Json config_to_json(const RunConfig& cfg) {
  Json j = {{"command", cfg.command}, {"q", cfg.q_list},   {"rho", cfg.rho},
            {"seed", cfg.seed},       {"j1_2", cfg.j1_2},  {"j2_2", cfg.j2_2}};
  if (cfg.p_max) j["pmax"] = *cfg.p_max;
  if (cfg.tol) j["tol"] = *cfg.tol;
  if (!cfg.suites.empty()) j["suites"] = cfg.suites;
  if (!cfg.poly.empty()) j["poly"] = cfg.poly;
  return j;
}

std::string format_double(double v, int digits) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::string cell_text(const Json& v, int digits) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer() || v.is_number_unsigned()) return v.dump();
  if (v.is_number_float()) return format_double(v.get<double>(), digits);
  return v.dump();
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string r = "\"";
  for (char c : s) {
    if (c == '"') r += '"';
    r += c;
  }
  return r + "\"";
}

std::string half_text(int two_j) {
  return two_j % 2 == 0 ? std::to_string(two_j / 2) : std::to_string(two_j) + "/2";
}

}  // namespace

void validate(const RunConfig& cfg) {
  if (cfg.q_list.empty()) throw std::invalid_argument("no q given");
  for (int q : cfg.q_list) {
    if (q < 1) throw std::invalid_argument("q must be >= 1, got " + std::to_string(q));
    if (q > kLargeQ && !cfg.allow_large)
      throw std::invalid_argument("q = " + std::to_string(q) + " exceeds " + std::to_string(kLargeQ) +
                                  "; pass --allow-large to run it");
  }
  if (cfg.tol && !(*cfg.tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  if (!(cfg.rho > 0.0)) throw std::invalid_argument("radius must be positive");
  if (cfg.p_max && (*cfg.p_max < 0 || *cfg.p_max >= kMaxFormDegree))
    throw std::invalid_argument("pmax must lie in 0.." + std::to_string(kMaxFormDegree - 1));
  if (cfg.j1_2 < 0 || cfg.j2_2 < 0 || cfg.jmax_2 < 0) throw std::invalid_argument("superspins must be non-negative");
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"dimensions", "highest-weight", "harmonics",     "casimir", "gradestar",
                                                 "oracle",     "calculus",       "maurer-cartan", "body"};
  return names;
}

CommandOutput cmd_verify(const RunConfig& cfg) {
  validate(cfg);
  const double tol = cfg.tol.value_or(kDefaultResidualTol);
  std::vector<std::string> suites = cfg.suites;
  if (suites.empty() || std::find(suites.begin(), suites.end(), "all") != suites.end()) suites = suite_names();
  for (const auto& s : suites)
    if (std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end())
      throw std::invalid_argument("unknown suite '" + s + "'");
  auto wants = [&](const std::string& s) { return std::find(suites.begin(), suites.end(), s) != suites.end(); };
  Checks checks;
  if (wants("oracle")) suite_oracle(cfg, checks, tol);
  for (int q : cfg.q_list) {
    const Level lv(q, cfg.rho);
    if (wants("dimensions")) suite_dimensions(lv, checks);
    if (wants("highest-weight")) suite_highest_weight(lv, checks, tol);
    if (wants("harmonics")) suite_harmonics(lv, checks, tol, cfg.seed);
    if (wants("casimir")) suite_casimir(lv, checks, tol);
    if (wants("gradestar")) suite_gradestar(lv, checks, tol);
    if (wants("calculus")) suite_calculus(lv, checks, tol, cfg.seed);
    if (wants("maurer-cartan")) suite_maurer_cartan(lv, checks, tol, cfg.seed);
    if (wants("body")) suite_body(lv, checks, tol, cfg.seed);
  }
  CommandOutput out;
  out.table.columns = {"suite", "check", "q", "residual", "tolerance", "passed"};
  Json list = Json::array();
  bool all = true;
  for (const auto& c : checks) {
    all = all && c.passed();
    out.table.rows.push_back({c.suite, c.name, c.q ? Json(*c.q) : Json(nullptr), c.residual, c.tol, c.passed()});
    list.push_back(check_to_json(c));
  }
  out.report = {{"config", config_to_json(cfg)}, {"checks", std::move(list)}, {"passed", all}};
  out.exit_code = all ? kExitOk : kExitFailed;
  if (!all) out.notes.push_back("one or more checks failed");
  return out;
}

CommandOutput cmd_converge(const RunConfig& cfg) {
  validate(cfg);
  CommandOutput out;
  out.table.columns = {"j1", "j2", "q", "c_q", "c_classical", "delta", "product_residual"};
  const StructureConstant classical = structure_constant_classical(cfg.j1_2, cfg.j2_2);
  Json rows = Json::array();
  for (int q : cfg.q_list) {
    if (cfg.j1_2 + cfg.j2_2 > 2 * q) {
      out.notes.push_back("skipped q = " + std::to_string(q) + ": j1 + j2 > q");
      continue;
    }
    const StructureConstant c = structure_constant_fuzzy(q, cfg.j1_2, cfg.j2_2);
    const double delta = std::abs(c.value - classical.value);
    out.table.rows.push_back({half_text(cfg.j1_2), half_text(cfg.j2_2), q, c.value, classical.value, delta, c.residual});
    rows.push_back({{"j1", half_text(cfg.j1_2)}, {"j2", half_text(cfg.j2_2)}, {"q", q}, {"c_q", c.value},
                    {"c_classical", classical.value}, {"delta", delta}, {"product_residual", c.residual}});
  }
  out.report = {{"config", config_to_json(cfg)},
                {"classical_residual", classical.residual},
                {"rows", std::move(rows)},
                {"notes", out.notes}};
  return out;
}

CommandOutput cmd_cohomology(const RunConfig& cfg) {
  validate(cfg);
  const double tol = cfg.tol.value_or(kDefaultRankTol);
  const int super_pmax = cfg.p_max.value_or(5);
  const int body_pmax = cfg.p_max.value_or(3);
  CommandOutput out;
  out.table.columns = {"instance", "q", "p", "dim_omega", "rank_d", "betti", "sv_gap"};
  Json levels = Json::array();
  bool inconclusive = false, beta_ok = true;
  auto add_rows = [&](const char* name, int q, const CohomologyReport& r) {
    for (const auto& d : r.degrees) {
      const double gap = d.rank_detail.margin;
      out.table.rows.push_back({name, q, d.p, d.form_dim, d.rank_d, d.betti,
                                std::isfinite(gap) ? Json(gap) : Json(nullptr)});
      if (gap < 10.0) inconclusive = true;
    }
  };
  for (int q : cfg.q_list) {
    const Level lv(q, cfg.rho);
    const CohomologyReport sr = cohomology_dims(lv.super_ctx, super_pmax, tol);
    const CohomologyReport br = cohomology_dims(lv.body_ctx, body_pmax, tol);
    add_rows("super", q, sr);
    add_rows("body", q, br);
    const BodyCompatibility bc = body_cohomology_check(lv.super_ctx, lv.super_sphere, lv.body_ctx, lv.body_sphere, 3, tol);
    if (bc.exactness_rank.margin < 10.0) inconclusive = true;
    const bool ok = bc.non_exact && bc.super_closed_residual < kDefaultResidualTol &&
                    bc.body_closed_residual < kDefaultResidualTol;
    beta_ok = beta_ok && ok;
    out.notes.push_back("q = " + std::to_string(q) + ": H(beta) degree 3 " + (ok ? "ok" : "FAILED") +
                        " (super |dw| = " + format_double(bc.super_closed_residual, 3) +
                        ", body |d beta(w)| = " + format_double(bc.body_closed_residual, 3) +
                        ", distance to exact = " + format_double(bc.distance_to_exact, 3) + ")");
    levels.push_back({{"q", q},
                      {"super", cohomology_to_json(sr)},
                      {"body", cohomology_to_json(br)},
                      {"h_beta",
                       {{"p", bc.p},
                        {"super_closed_residual", bc.super_closed_residual},
                        {"body_closed_residual", bc.body_closed_residual},
                        {"body_norm", bc.body_norm},
                        {"distance_to_exact", bc.distance_to_exact},
                        {"non_exact", bc.non_exact},
                        {"rank_detail", rank_to_json(bc.exactness_rank)},
                        {"passed", ok}}}});
  }
  if (inconclusive) out.notes.push_back("inconclusive: a rank decision has sv_gap < 10");
  out.report = {{"config", config_to_json(cfg)},
                {"levels", std::move(levels)},
                {"inconclusive", inconclusive},
                {"h_beta_passed", beta_ok}};
  out.exit_code = inconclusive ? kExitInconclusive : (beta_ok ? kExitOk : kExitFailed);
  return out;
}

CommandOutput cmd_oracle(const RunConfig& cfg) {
  if (!(cfg.rho > 0.0)) throw std::invalid_argument("radius must be positive");
  const Rational rho = rational_from_double(cfg.rho);
  CommandOutput out;
  if (cfg.poly.empty()) {
    out.table.columns = {"j1", "j2", "c_classical", "residual"};
    Json rows = Json::array();
    for (int a = 0; a <= cfg.jmax_2; ++a)
      for (int b = 0; a + b <= cfg.jmax_2; ++b) {
        const StructureConstant c = structure_constant_classical(a, b);
        out.table.rows.push_back({half_text(a), half_text(b), c.value, c.residual});
        rows.push_back({{"j1", half_text(a)}, {"j2", half_text(b)}, {"c_classical", c.value}, {"residual", c.residual}});
      }
    out.report = {{"config", {{"command", "oracle"}, {"jmax_2", cfg.jmax_2}}}, {"structure_constants", std::move(rows)}};
    return out;
  }
  const SuperPoly f = parse_superpoly(cfg.poly);
  const SuperPoly nf = normal_form(f, rho);
  const Complex integral = berezin_sphere_integral(f, rho);
  const Complex norm = inner_S(f, f, rho);
  const SuperPoly body = body_map_classical(f, rho);
  const auto parity = nf.parity();
  out.table.columns = {"j2", "l2", "m2", "mu", "re", "im"};
  Json coeffs = Json::array();
  for (const auto& [l, c] : classical_expansion(f, cfg.jmax_2, rho)) {
    if (std::abs(c) < 1e-14) continue;
    out.table.rows.push_back({l.j2, l.l2(), l.m2, l.mu, c.real(), c.imag()});
    coeffs.push_back({{"label", label_to_json(l)}, {"value", complex_to_json(c)}});
  }
  out.notes.push_back("normal form: " + to_text(nf));
  out.notes.push_back("body: " + to_text(body));
  out.notes.push_back("integral: " + format_double(integral.real(), 17) + " + " + format_double(integral.imag(), 17) + "i");
  out.report = {{"config", {{"command", "oracle"}, {"poly", cfg.poly}, {"rho", cfg.rho}, {"jmax_2", cfg.jmax_2}}},
                {"normal_form", to_text(nf)},
                {"parity", parity ? Json(*parity == Parity::Even ? "even" : "odd") : Json("mixed")},
                {"integral", complex_to_json(integral)},
                {"inner_self", complex_to_json(norm)},
                {"body", to_text(body)},
                {"expansion", std::move(coeffs)}};
  return out;
}

std::string render(const CommandOutput& out, OutputFormat format) {
  std::ostringstream os;
  switch (format) {
    case OutputFormat::Json:
      os << out.report.dump(2) << '\n';
      break;
    case OutputFormat::Csv: {
      for (std::size_t i = 0; i < out.table.columns.size(); ++i) os << (i ? "," : "") << out.table.columns[i];
      os << '\n';
      for (const auto& row : out.table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_escape(cell_text(row[i], 17));
        os << '\n';
      }
      break;
    }
    case OutputFormat::Text: {
      std::vector<std::size_t> width(out.table.columns.size());
      std::vector<std::vector<std::string>> cells;
      for (std::size_t i = 0; i < width.size(); ++i) width[i] = out.table.columns[i].size();
      for (const auto& row : out.table.rows) {
        std::vector<std::string> r;
        for (std::size_t i = 0; i < row.size(); ++i) {
          r.push_back(cell_text(row[i], 6));
          width[i] = std::max(width[i], r.back().size());
        }
        cells.push_back(std::move(r));
      }
      auto line = [&](const std::vector<std::string>& r) {
        for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "  " : "") << std::left << std::setw(static_cast<int>(width[i])) << r[i];
        os << '\n';
      };
      line(out.table.columns);
      for (const auto& r : cells) line(r);
      for (const auto& n : out.notes) os << "# " << n << '\n';
      break;
    }
  }
  return os.str();
}

int parse_half_integer(const std::string& s) {
  const auto slash = s.find('/');
  try {
    std::size_t pos = 0;
    if (slash != std::string::npos) {
      const int num = std::stoi(s.substr(0, slash), &pos);
      if (pos != slash || s.substr(slash + 1) != "2") throw std::invalid_argument("");
      return num;
    }
    const double v = std::stod(s, &pos);
    if (pos != s.size() || std::abs(2.0 * v - std::round(2.0 * v)) > 1e-12) throw std::invalid_argument("");
    return static_cast<int>(std::lround(2.0 * v));
  } catch (const std::exception&) {
    throw std::invalid_argument("'" + s + "' is not a half-integer");
  }
}

std::vector<int> parse_q_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  auto to_int = [](const std::string& t) {
    std::size_t pos = 0;
    const int v = std::stoi(t, &pos);
    if (pos != t.size()) throw std::invalid_argument("bad integer '" + t + "'");
    return v;
  };
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    const auto dash = tok.find('-', 1);
    if (dash == std::string::npos) {
      out.push_back(to_int(tok));
    } else {
      const int a = to_int(tok.substr(0, dash)), b = to_int(tok.substr(dash + 1));
      if (b < a) throw std::invalid_argument("empty range '" + tok + "'");
      for (int q = a; q <= b; ++q) out.push_back(q);
    }
  }
  if (out.empty()) throw std::invalid_argument("empty q list");
  return out;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fuzzy supersphere toolkit: harmonics, limits, differential calculus and cohomology"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::optional<int> q;
  std::string q_list, j1 = "1/2", j2 = "1/2", jmax = "2", format = "text";
  std::optional<double> tol;
  std::optional<int> pmax;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--q", q, "truncation level q >= 1");
    sub->add_option("--q-list", q_list, "comma list of q values, ranges like 2-6 allowed");
    sub->add_option("--rho", cfg.rho, "radius")->capture_default_str();
    sub->add_option("--tol", tol, "tolerance (verify: residual, cohomology: rank)");
    sub->add_option("--seed", cfg.seed, "seed for randomized checks")->capture_default_str();
    sub->add_option("--format", format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}))->capture_default_str();
    sub->add_option("--out", cfg.out, "write the report to this file");
    sub->add_flag("--allow-large", cfg.allow_large, "allow q > 60");
  };
  CLI::App* verify = app.add_subcommand("verify", "run verification suites");
  common(verify);
  verify->add_option("--suite", cfg.suites, "suite name (repeatable, default all)")->delimiter(',');
  CLI::App* converge = app.add_subcommand("converge", "structure constants c^q against the classical limit");
  common(converge);
  converge->add_option("--j1", j1, "first superspin")->capture_default_str();
  converge->add_option("--j2", j2, "second superspin")->capture_default_str();
  CLI::App* cohomology = app.add_subcommand("cohomology", "Betti numbers of the super and body complexes");
  common(cohomology);
  cohomology->add_option("--pmax", pmax, "highest degree (default 5 super, 3 body)");
  CLI::App* oracle = app.add_subcommand("oracle", "exact classical model");
  oracle->add_option("--poly", cfg.poly, "polynomial, e.g. \"1/2 * x1^2 + x3 t4 t5\"");
  oracle->add_option("--rho", cfg.rho, "radius")->capture_default_str();
  oracle->add_option("--jmax", jmax, "largest superspin of the expansion")->capture_default_str();
  oracle->add_option("--format", format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
  oracle->add_option("--out", cfg.out, "write the report to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  CommandOutput result;
  try {
    cfg.command = app.get_subcommands().front()->get_name();
    cfg.tol = tol;
    cfg.p_max = pmax;
    cfg.format = format == "json" ? OutputFormat::Json : format == "csv" ? OutputFormat::Csv : OutputFormat::Text;
    if (!q_list.empty()) cfg.q_list = parse_q_list(q_list);
    if (q) cfg.q_list.insert(cfg.q_list.begin(), *q);
    if (cfg.q_list.empty()) {
      if (cfg.command == "converge") cfg.q_list = {2, 5, 10, 20, 40};
      else cfg.q_list = {1};
    }
    cfg.j1_2 = parse_half_integer(j1);
    cfg.j2_2 = parse_half_integer(j2);
    cfg.jmax_2 = parse_half_integer(jmax);
    validate(cfg);
  } catch (const std::exception& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (cfg.command == "verify") result = cmd_verify(cfg);
    else if (cfg.command == "converge") result = cmd_converge(cfg);
    else if (cfg.command == "cohomology") result = cmd_cohomology(cfg);
    else result = cmd_oracle(cfg);
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailed;
  }

  const std::string text = render(result, cfg.format);
  if (cfg.out.empty()) {
    out << text;
  } else {
    std::ofstream f(cfg.out);
    if (!f) {
      err << "error: cannot write " << cfg.out << '\n';
      return kExitFailed;
    }
    f << text;
  }
  for (const auto& n : result.notes)
    if (cfg.format != OutputFormat::Text) err << n << '\n';
  return result.exit_code;
}

}  // namespace fuzzsuper
