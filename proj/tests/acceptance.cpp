// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fuzzsuper/calculus.hpp"
#include "fuzzsuper/cohomology.hpp"
#include "fuzzsuper/oracle.hpp"

using namespace fuzzsuper;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream detail;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail << " [failed: " << what << "]";
    }
  }
  void worst(double& acc, double v) { acc = std::max(acc, std::isfinite(v) ? v : INFINITY); }
};

double sgn(int e) { return e % 2 == 0 ? 1.0 : -1.0; }
int par(Parity p) { return to_int(p); }

struct Level {
  FuzzySuperSphere super_sphere;
  FuzzySphere body_sphere;
  ContextPtr super_ctx;
  ContextPtr body_ctx;
  explicit Level(int q, double rho = 1.0)
      : super_sphere(FuzzySuperSphere::build(q, rho)),
        body_sphere(FuzzySphere::build(q, rho)),
        super_ctx(DerivationContext::from_super(super_sphere.rep())),
        body_ctx(DerivationContext::from_body(body_sphere.rep())) {}
};

GradedMatrix random_matrix(GradedDims dims, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const auto n = static_cast<Eigen::Index>(dims.total());
  Matrix m(n, n);
  for (Eigen::Index c = 0; c < n; ++c)
    for (Eigen::Index r = 0; r < n; ++r) {
      const double re = u(rng);
      m(r, c) = {re, u(rng)};
    }
  return {dims, std::move(m)};
}

SuperPoly random_poly(std::mt19937_64& rng, int terms = 4) {
  std::uniform_int_distribution<int> coef(-5, 5), expo(0, 3), mask(0, 3);
  SuperPoly f;
  for (int t = 0; t < terms; ++t)
    f.add_term({mask(rng), expo(rng), expo(rng), expo(rng)}, GaussRational(coef(rng), coef(rng)));
  return f;
}

// 1
void dimension_ledger(Outcome& o) {
  for (int q = 1; q <= 6; ++q) {
    const LabelCounts c = count_labels(q);
    const auto even = static_cast<std::size_t>(q * q + (q + 1) * (q + 1));
    const auto odd = static_cast<std::size_t>(2 * q * (q + 1));
    const auto total = static_cast<std::size_t>((2 * q + 1) * (2 * q + 1));
    o.expect(c.even == even && c.odd == odd && c.total() == total, "counts at q = " + std::to_string(q));
    o.expect(harmonic_labels(q).size() == total, "label list at q = " + std::to_string(q));
  }
  o.detail << "q = 1..6 counts exact";
}

// 2
void pseudo_orthonormality(Outcome& o) {
  double fuzzy = 0.0;
  for (int q = 1; q <= 4; ++q) {
    const FuzzySuperSphere s = FuzzySuperSphere::build(q);
    const std::size_t n = s.labels().size();
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        const double want = a == b ? s.labels()[a].pseudo_norm() : 0.0;
        o.worst(fuzzy, std::abs(indefinite_inner(s.harmonics()[a], s.harmonics()[b]) - want));
      }
  }
  const Rational rho(1);
  std::vector<HarmonicLabel> labels;
  for (int j2 = 0; j2 <= 4; ++j2)
    for (const auto& l : multiplet_labels(j2)) labels.push_back(l);
  std::vector<ScaledPoly> ys;
  for (const auto& l : labels) ys.push_back(classical_harmonic(l, rho));
  double classical = 0.0;
  for (std::size_t a = 0; a < ys.size(); ++a)
    for (std::size_t b = 0; b < ys.size(); ++b)
      o.worst(classical, std::abs(inner_S(ys[a], ys[b], rho) - (a == b ? labels[a].pseudo_norm() : 0.0)));
  o.expect(fuzzy < 1e-9, "fuzzy Gram");
  o.expect(classical < 1e-12, "classical Gram");
  o.detail << "fuzzy q<=4 residual " << fuzzy << ", classical j<=2 residual " << classical;
}

// 3
void casimir(Outcome& o) {
  double sup = 0.0, body = 0.0;
  for (int q = 1; q <= 6; ++q)
    for (double rho : {1.0, 2.5}) {
      o.worst(sup, supersphere_relation_residual(FuzzySuperSphere::build(q, rho)));
      o.worst(body, sphere_relation_residual(FuzzySphere::build(q, rho)));
    }
  o.expect(sup < 1e-10, "supersphere relation");
  o.expect(body < 1e-10, "sphere relation");
  o.detail << "super residual " << sup << ", body residual " << body;
}

// 4
void grade_star(Outcome& o) {
  double irrep0 = 0.0, irrep1 = 0.0, ad = 0.0;
  for (int j2 = 1; j2 <= 6; ++j2) {
    o.worst(irrep0, verify_grade_star(build_irrep(j2, Parity::Odd), 0));
    o.worst(irrep1, verify_grade_star(build_irrep(j2, Parity::Even), 1));
  }
  for (int q = 1; q <= 3; ++q) o.worst(ad, adjoint_grade_star_residual(FuzzySuperSphere::build(q), 1));
  o.expect(irrep0 < 1e-10, "ddagger0 on odd highest weight irreps");
  o.expect(irrep1 < 1e-10, "ddagger1 on even highest weight irreps");
  o.expect(ad < 1e-10, "ad is grade star for ddagger1");
  o.detail << "irrep ddagger0 " << irrep0 << ", even-hw ddagger1 " << irrep1 << ", ad ddagger1 (q<=3) " << ad;
}

// 5
void commutative_limit(Outcome& o) {
  double worst_ratio = 0.0, worst_abs = 0.0;
  int pairs = 0;
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; a + b <= 3; ++b) {
      const double cl = structure_constant_classical(a, b).value;
      const double d10 = std::abs(structure_constant_fuzzy(10, a, b).value - cl);
      const double d40 = std::abs(structure_constant_fuzzy(40, a, b).value - cl);
      ++pairs;
      const std::string tag = "(" + std::to_string(a) + "/2, " + std::to_string(b) + "/2)";
      o.worst(worst_abs, d40);
      if (a == 0 || b == 0) {
        // Y_0 is the unit on both sides: both differences vanish
        o.expect(d10 < 1e-12 && d40 < 1e-12, "trivial pair " + tag);
        continue;
      }
      o.worst(worst_ratio, d40 / d10);
      o.expect(d40 < 0.5 * d10, "halving for " + tag);
      o.expect(d40 < 0.05, "absolute bound for " + tag);
    }
  o.detail << pairs << " pairs, max |delta(40)| " << worst_abs << ", max delta(40)/delta(10) " << worst_ratio;
}

// 6
void cartan_identities(Outcome& o) {
  double dd = 0, rec = 0, i12 = 0, i13 = 0, dl = 0, lrule = 0, irule = 0, drule = 0, dlam = 0;
  for (int q : {1, 2}) {
    const Level lv(q);
    const auto& ctx = lv.super_ctx;
    const int n = ctx->size();
    std::mt19937_64 rng(1000 + static_cast<unsigned>(q));
    for (int p = 0; p <= 3; ++p)
      for (Parity pw : {Parity::Even, Parity::Odd}) {
        const SuperForm w = random_superform(ctx, p, rng, pw);
        const int wp = par(pw);
        const SuperForm dw = exterior_d(w);
        o.worst(dd, exterior_d(dw).max_abs());
        o.worst(rec, (dw - exterior_d_recursive(w)).max_abs());
        for (int a = 0; a < n; ++a) {
          const int pa = par(ctx->parity(a));
          o.worst(dl, (exterior_d(lie_derivative(a, w)) - lie_derivative(a, dw)).max_abs());
          if (p == 0) continue;
          for (int b = 0; b < n; ++b) {
            const int pb = par(ctx->parity(b));
            if (p >= 2) o.worst(i12, (interior(a, interior(b, w)) + sgn(pa * pb) * interior(b, interior(a, w))).max_abs());
            SuperForm rhs(ctx, p - 1);
            for (int c = 0; c < n; ++c) rhs += ctx->c(c, a, b) * interior(c, w);
            const SuperForm lhs = lie_derivative(a, interior(b, w)) - interior(b, lie_derivative(a, w));
            o.worst(i13, (lhs - sgn(pa * wp) * rhs).max_abs());
          }
        }
        for (int p2 = 0; p + p2 <= 3; ++p2)
          for (Parity pw2 : {Parity::Even, Parity::Odd}) {
            const SuperForm w2 = random_superform(ctx, p2, rng, pw2);
            const SuperForm ww = wedge(w, w2);
            o.worst(drule, (exterior_d(ww) - wedge(dw, w2) - sgn(p) * wedge(w, exterior_d(w2))).max_abs());
            for (int a = 0; a < n; ++a) {
              const int pa = par(ctx->parity(a));
              o.worst(lrule, (lie_derivative(a, ww) - wedge(lie_derivative(a, w), w2) -
                              sgn(pa * wp) * wedge(w, lie_derivative(a, w2))).max_abs());
              if (p + p2 == 0) continue;
              SuperForm t1(ctx, p + p2 - 1), t2(ctx, p + p2 - 1);
              if (p >= 1) t1 = wedge(interior(a, w), w2);
              if (p2 >= 1) t2 = wedge(w, interior(a, w2));
              o.worst(irule, (interior(a, ww) - sgn(pa * par(pw2)) * t1 - sgn(p) * t2).max_abs());
            }
          }
      }
    for (int a = 0; a < n; ++a) {
      SuperForm rhs(ctx, 2);
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          if (ctx->c(a, b, c) != 0.0) rhs += (0.5 * ctx->c(a, b, c)) * wedge(lambda(ctx, c), lambda(ctx, b));
      o.worst(dlam, (exterior_d(lambda(ctx, a)) - rhs).max_abs());
    }
  }
  const std::pair<const char*, double> all[] = {{"d^2", dd},          {"recursion", rec},   {"i i", i12},
                                                {"[L, i]", i13},      {"dL - Ld", dl},      {"Leibniz L", lrule},
                                                {"Leibniz i", irule}, {"Leibniz d", drule}, {"d lambda", dlam}};
  double m = 0.0;
  for (const auto& [name, v] : all) {
    o.expect(v < 1e-9, name);
    m = std::max(m, v);
  }
  o.detail << "q = 1,2, p <= 3, max residual " << m;
}

// 7
void maurer_cartan_form(Outcome& o) {
  double eq = 0.0, comm = 0.0, inv = 0.0;
  for (int q : {1, 2}) {
    const Level lv(q);
    const auto& ctx = lv.super_ctx;
    const SuperForm mc = maurer_cartan(ctx);
    o.worst(eq, (exterior_d(mc) - wedge(mc, mc)).max_abs());
    std::mt19937_64 rng(2000 + static_cast<unsigned>(q));
    for (Parity pf : {Parity::Even, Parity::Odd}) {
      const SuperForm f = random_superform(ctx, 0, rng, pf);
      o.worst(comm, (exterior_d(f) - (wedge(mc, f) - wedge(f, mc))).max_abs());
    }
    for (int a = 0; a < ctx->size(); ++a) o.worst(inv, lie_derivative(a, mc).max_abs());
    const std::size_t dim = invariant_form_dimension(ctx, 1);
    o.expect(dim == 1, "invariant 1-forms at q = " + std::to_string(q) + " have dimension " + std::to_string(dim));
  }
  o.expect(eq < 1e-9, "structure equation");
  o.expect(comm < 1e-9, "d as commutator");
  o.expect(inv < 1e-9, "invariance");
  o.detail << "dL - L^L " << eq << ", df - [L, f} " << comm << ", invariant 1-forms 1-dimensional";
}

// 8
void cohomology(Outcome& o) {
  const std::vector<std::size_t> want_super{1, 0, 0, 1, 0, 0}, want_body{1, 0, 0, 1};
  double margin = INFINITY;
  for (int q : {1, 2}) {
    const Level lv(q);
    const CohomologyReport s = cohomology_dims(lv.super_ctx, 5);
    const CohomologyReport b = cohomology_dims(lv.body_ctx, 3);
    o.expect(s.betti() == want_super, "super Betti numbers at q = " + std::to_string(q));
    o.expect(b.betti() == want_body, "body Betti numbers at q = " + std::to_string(q));
    margin = std::min({margin, s.min_margin(), b.min_margin()});
  }
  o.expect(margin >= 1e4, "singular value gap");
  o.detail << "super [1,0,0,1,0,0], body [1,0,0,1] at q = 1,2; min sv gap " << margin << " x tol";
}

// 9
void body_map(Outcome& o) {
  double coord = 0.0, theta = 0.0, coeff = 0.0, equi = 0.0, cochain = 0.0;
  for (int q = 1; q <= 4; ++q) {
    const Level lv(q);
    const auto& s = lv.super_sphere;
    const auto& b = lv.body_sphere;
    const auto xs = coordinates(s);
    const auto xb = sphere_coordinates(b);
    for (int k = 0; k < 3; ++k) {
      const auto kk = static_cast<std::size_t>(k);
      o.worst(coord, (body_map_fuzzy(xs.x[kk], s, b) - xb[kk]).max_abs());
      // coefficient level: push the harmonic expansion of X_k through the label map
      std::vector<Complex> image(b.labels().size(), 0.0);
      for (const auto& [l, c] : psi_q_inv(xs.x[kk], s).coeffs)
        if (const auto img = body_image(l)) image[b.index_of(img->first)] += img->second * c;
      for (std::size_t i = 0; i < image.size(); ++i)
        o.worst(coeff, std::abs(image[i] - hs_inner(b.harmonics()[i], xb[kk])));
    }
    for (const auto& t : xs.theta) o.worst(theta, body_map_fuzzy(t, s, b).max_abs());
    std::mt19937_64 rng(3000 + static_cast<unsigned>(q));
    const GradedMatrix f = random_matrix(s.dims(), rng);
    for (int k = 0; k < 3; ++k)
      o.worst(equi, (body_map_fuzzy(s.adjoint_action(k, f), s, b) - b.adjoint_action(k, body_map_fuzzy(f, s, b))).max_abs());
    if (q <= 2)
      for (int p = 0; p <= 2; ++p) {
        const SuperForm w = random_superform(lv.super_ctx, p, rng);
        o.worst(cochain, (body_cochain_map(exterior_d(w), s, b, lv.body_ctx) -
                          exterior_d(body_cochain_map(w, s, b, lv.body_ctx))).max_abs());
      }
    const std::size_t n = s.dims().total();
    Matrix bm(static_cast<Eigen::Index>(b.dims().total() * b.dims().total()), static_cast<Eigen::Index>(n * n));
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i)
        bm.col(static_cast<Eigen::Index>(i + j * n)) = vectorize(body_map_fuzzy(GradedMatrix::unit(s.dims(), i, j), s, b));
    const auto kernel = static_cast<std::size_t>(bm.cols()) - numerical_rank(bm);
    const auto want = static_cast<std::size_t>((2 * q + 1) * (2 * q + 1) - (q + 1) * (q + 1));
    o.expect(kernel == want, "kernel dimension at q = " + std::to_string(q));
  }
  o.expect(coord < 1e-12 && coeff < 1e-12, "beta(X) = X-hat");
  o.expect(theta < 1e-12, "beta(Theta) = 0");
  o.expect(equi < 1e-10, "sl(2) equivariance");
  o.expect(cochain < 1e-10, "cochain property");
  o.detail << "coordinates " << std::max(coord, coeff) << ", odd " << theta << ", equivariance " << equi
           << ", cochain " << cochain << ", kernel (2q+1)^2-(q+1)^2 for q <= 4";
}

// 10
void oracle_consistency(Outcome& o) {
  for (const Rational& rho : {Rational(1), Rational(5, 2)})
    o.expect(inner_S_exact(SuperPoly::one(), SuperPoly::one(), rho) == GaussRational(1), "<1|1> = 1");
  std::mt19937_64 rng(4000);
  const Rational rho(1);
  int ideal_nonzero = 0;
  for (int k = 0; k < 50; ++k)
    if (!berezin_integral_over_2pi(defining_polynomial(rho) * random_poly(rng), rho).is_zero()) ++ideal_nonzero;
  o.expect(ideal_nonzero == 0, "integral on the ideal");
  int law_failures = 0;
  for (int k = 0; k < 50; ++k) {
    const SuperPoly f = random_poly(rng), g = random_poly(rng);
    for (Parity pf : {Parity::Even, Parity::Odd}) {
      const SuperPoly fh = f.part(pf);
      if (!(cross_involution(cross_involution(fh)) == GaussRational(pf == Parity::Even ? 1 : -1) * fh)) ++law_failures;
      for (Parity pg : {Parity::Even, Parity::Odd}) {
        const SuperPoly gh = g.part(pg);
        const GaussRational s(static_cast<int>(sign_of(pf, pg)));
        if (!(cross_involution(fh * gh) == s * (cross_involution(gh) * cross_involution(fh)))) ++law_failures;
      }
    }
  }
  o.expect(law_failures == 0, "involution laws");
  o.detail << "<1|1> = 1 exactly, 50 ideal elements integrate to 0, involution laws exact on 50 pairs";
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<void(Outcome&)> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "dimension ledger", 1.0, dimension_ledger},
      {2, "pseudo-orthonormality", 10.0, pseudo_orthonormality},
      {3, "Casimir identity", 0.0, casimir},
      {4, "grade star", 0.0, grade_star},
      {5, "graded-commutative limit", 30.0, commutative_limit},
      {6, "Cartan calculus", 60.0, cartan_identities},
      {7, "Maurer-Cartan form", 0.0, maurer_cartan_form},
      {8, "cohomology", 120.0, cohomology},
      {9, "body map", 0.0, body_map},
      {10, "oracle self-consistency", 0.0, oracle_consistency},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget_s > 0.0 && secs > c.budget_s) o.expect(false, "runtime budget " + std::to_string(c.budget_s) + " s");
    if (!o.ok) ++failed;
    std::printf("%s %2d %-26s %7.2fs  %s\n", o.ok ? "PASS" : "FAIL", c.id, c.name, secs, o.detail.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
