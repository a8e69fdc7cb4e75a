#include <doctest.h>

#include "fuzzsuper/cohomology.hpp"

using namespace fuzzsuper;

namespace {

struct Level {
  FuzzySuperSphere super_sphere;
  FuzzySphere body_sphere;
  ContextPtr super_ctx;
  ContextPtr body_ctx;
  explicit Level(int q)
      : super_sphere(FuzzySuperSphere::build(q)),
        body_sphere(FuzzySphere::build(q)),
        super_ctx(DerivationContext::from_super(super_sphere.rep())),
        body_ctx(DerivationContext::from_body(body_sphere.rep())) {}
};

using Betti = std::vector<std::size_t>;

}  // namespace

TEST_CASE("flattening round trip and d as a matrix") {
  const Level lv(1);
  std::mt19937_64 rng(61);
  for (int p = 0; p <= 2; ++p) {
    const SuperForm w = random_superform(lv.super_ctx, p, rng);
    const Vector v = form_vector(w);
    CHECK(static_cast<std::size_t>(v.size()) == lv.super_ctx->gind_size(p) * 9);
    CHECK((form_from_vector(lv.super_ctx, p, v) - w).max_abs() == 0.0);
    CHECK((d_matrix(lv.super_ctx, p) * v - form_vector(exterior_d(w))).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((lie_derivative_matrix(lv.super_ctx, kJ4, p) * v - form_vector(lie_derivative(kJ4, w))).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((d_matrix(lv.super_ctx, p + 1) * d_matrix(lv.super_ctx, p)).cwiseAbs().maxCoeff() < 1e-10);
  }
  CHECK(d_matrix(lv.super_ctx, 2).cols() == 108);
}

TEST_CASE("degree zero cohomology is spanned by the identity") {
  const Level lv(2);
  const Matrix d0 = d_matrix(lv.super_ctx, 0);
  CHECK((d0 * vectorize(GradedMatrix::identity(lv.super_ctx->dims()))).cwiseAbs().maxCoeff() < 1e-13);
  CHECK(d0.cols() - static_cast<Eigen::Index>(numerical_rank(d0)) == 1);
}

TEST_CASE("Betti numbers at q = 1") {
  const Level lv(1);
  const CohomologyReport s = cohomology_dims(lv.super_ctx, 5);
  CHECK(s.betti() == Betti{1, 0, 0, 1, 0, 0});
  CHECK(s.min_margin() >= 1e4);
  const CohomologyReport b = cohomology_dims(lv.body_ctx, 3);
  CHECK(b.betti() == Betti{1, 0, 0, 1});
  CHECK(cohomology_dims(lv.super_ctx, 0).betti() == Betti{1});
  for (const auto& d : s.degrees) CHECK(d.form_dim == lv.super_ctx->gind_size(d.p) * 9);
}

TEST_CASE("isotypic decomposition") {
  const Level lv(2);
  const auto sb = isotypic_bases(lv.super_sphere);
  CHECK(sb.size() == 5);
  Eigen::Index total = 0;
  for (const auto& [j2, m] : sb) {
    CHECK(m.cols() == 2 * j2 + 1);
    total += m.cols();
  }
  CHECK(total == 25);
  const auto bb = isotypic_bases(lv.body_sphere);
  CHECK(bb.size() == 3);
  for (const auto& [j2, m] : bb) CHECK(m.cols() == j2 + 1);
}

TEST_CASE("cohomology lives in the trivial block") {
  const Level lv(2);
  const auto sb = isotypic_bases(lv.super_sphere);
  CHECK(restricted_cohomology(lv.super_ctx, sb.at(0), 4).betti() == Betti{1, 0, 0, 1, 0});
  for (const auto& [j2, m] : sb) {
    if (j2 == 0) continue;
    CHECK(restricted_cohomology(lv.super_ctx, m, 3).betti() == Betti{0, 0, 0, 0});
  }
  const auto bb = isotypic_bases(lv.body_sphere);
  CHECK(restricted_cohomology(lv.body_ctx, bb.at(2), 3).betti() == Betti{0, 0, 0, 0});
  CHECK(restricted_cohomology(lv.body_ctx, bb.at(0), 3).betti() == Betti{1, 0, 0, 1});
}

TEST_CASE("invariant forms") {
  for (int q : {1, 2}) {
    const Level lv(q);
    CHECK(invariant_form_dimension(lv.super_ctx, 0) == 1);
    CHECK(invariant_form_dimension(lv.super_ctx, 1) == 1);
  }
}

TEST_CASE("degree three generator and its body image") {
  const Level lv(1);
  const SuperForm g = center_cohomology_generator(lv.super_ctx, 3);
  CHECK(exterior_d(g).max_abs() < 1e-10);
  CHECK(g.max_abs() > 0.1);
  CHECK_THROWS(center_cohomology_generator(lv.super_ctx, 1));
  const BodyCompatibility bc = body_cohomology_check(lv.super_ctx, lv.super_sphere, lv.body_ctx, lv.body_sphere);
  CHECK(bc.super_closed_residual < 1e-10);
  CHECK(bc.body_closed_residual < 1e-10);
  CHECK(bc.body_norm > 1e-3);
  CHECK(bc.non_exact);
}
