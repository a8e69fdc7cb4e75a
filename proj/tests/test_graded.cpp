#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "fuzzsuper/graded.hpp"
#include "support.hpp"

using namespace fuzzsuper;
using testing_support::random_graded;

namespace {

// <v, w> on the standard basis, antilinear in v.
Complex dot(const Vector& v, const Vector& w) { return v.dot(w); }

Vector basis_vector(std::size_t n, std::size_t i) {
  Vector v = Vector::Zero(static_cast<Eigen::Index>(n));
  v(static_cast<Eigen::Index>(i)) = 1.0;
  return v;
}

// Sign of a permutation by sorting it with adjacent swaps.
int bubble_sign(std::vector<int> s) {
  int sign = 1;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = 0; j + 1 < s.size() - i; ++j)
      if (s[j] > s[j + 1]) {
        std::swap(s[j], s[j + 1]);
        sign = -sign;
      }
  return sign;
}

// Graded sign picked up when the letters sigma(1)..sigma(p) are sorted by adjacent swaps.
int bubble_gamma(std::vector<int> s, const std::vector<Parity>& par) {
  int sign = 1;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = 0; j + 1 < s.size() - i; ++j)
      if (s[j] > s[j + 1]) {
        if (par[static_cast<std::size_t>(s[j])] == Parity::Odd && par[static_cast<std::size_t>(s[j + 1])] == Parity::Odd)
          sign = -sign;
        std::swap(s[j], s[j + 1]);
      }
  return sign;
}

}  // namespace

TEST_CASE("supertrace of a diagonal matrix") {
  Matrix m = Matrix::Zero(5, 5);
  for (int i = 0; i < 5; ++i) m(i, i) = i + 1.0;
  const GradedMatrix g({2, 3}, m);
  CHECK(std::abs(supertrace(g) - Complex(1 + 2 - 3 - 4 - 5)) < 1e-15);
}

TEST_CASE("parts and parity") {
  std::mt19937_64 rng(1);
  const GradedMatrix f = random_graded({2, 3}, rng);
  CHECK((f.even_part() + f.odd_part() - f).max_abs() == 0.0);
  CHECK(f.even_part().parity() == Parity::Even);
  CHECK(f.odd_part().parity() == Parity::Odd);
  CHECK_FALSE(f.parity().has_value());
  CHECK(GradedMatrix::unit({2, 3}, 0, 4).parity() == Parity::Odd);
  CHECK(GradedMatrix::unit({2, 3}, 3, 4).parity() == Parity::Even);
}

TEST_CASE("superadjoint satisfies its defining relation on basis vectors") {
  std::mt19937_64 rng(2);
  const GradedDims dims{3, 2};
  const GradedMatrix f = random_graded(dims, rng);
  for (Parity pf : {Parity::Even, Parity::Odd}) {
    const GradedMatrix fh = f.part(pf);
    const Matrix adj = superadjoint(fh).matrix();
    for (std::size_t i = 0; i < dims.total(); ++i)
      for (std::size_t j = 0; j < dims.total(); ++j) {
        const Vector v = basis_vector(dims.total(), i), w = basis_vector(dims.total(), j);
        const Complex lhs = dot(adj * v, w);
        const Complex rhs = sign_of(pf, dims.parity_of_index(i)) * dot(v, fh.matrix() * w);
        CHECK(std::abs(lhs - rhs) < 1e-14);
      }
  }
}

TEST_CASE("superadjoint involution and product rule") {
  std::mt19937_64 rng(3);
  const GradedDims dims{2, 3};
  const GradedMatrix f = random_graded(dims, rng), g = random_graded(dims, rng);
  for (Parity pf : {Parity::Even, Parity::Odd}) {
    const double s = pf == Parity::Even ? 1.0 : -1.0;
    CHECK((superadjoint(superadjoint(f.part(pf))) - s * f.part(pf)).max_abs() < 1e-14);
    for (Parity pg : {Parity::Even, Parity::Odd}) {
      const GradedMatrix lhs = superadjoint(f.part(pf) * g.part(pg));
      const GradedMatrix rhs = sign_of(pf, pg) * (superadjoint(g.part(pg)) * superadjoint(f.part(pf)));
      CHECK((lhs - rhs).max_abs() < 1e-13);
    }
  }
}

TEST_CASE("supertrace vanishes on graded commutators") {
  std::mt19937_64 rng(4);
  const GradedDims dims{3, 4};
  const GradedMatrix a = random_graded(dims, rng), b = random_graded(dims, rng);
  for (Parity pa : {Parity::Even, Parity::Odd})
    for (Parity pb : {Parity::Even, Parity::Odd})
      CHECK(std::abs(supertrace(graded_commutator(a.part(pa), b.part(pb)))) < 1e-12);
}

TEST_CASE("graded commutator: antisymmetry and Jacobi identity") {
  std::mt19937_64 rng(5);
  const GradedDims dims{2, 2};
  const GradedMatrix a = random_graded(dims, rng), b = random_graded(dims, rng), c = random_graded(dims, rng);
  for (Parity pa : {Parity::Even, Parity::Odd})
    for (Parity pb : {Parity::Even, Parity::Odd})
      for (Parity pc : {Parity::Even, Parity::Odd}) {
        const GradedMatrix x = a.part(pa), y = b.part(pb), z = c.part(pc);
        CHECK((graded_commutator(x, y) + sign_of(pa, pb) * graded_commutator(y, x)).max_abs() < 1e-13);
        const GradedMatrix jac = sign_of(pa, pc) * graded_commutator(x, graded_commutator(y, z)) +
                                 sign_of(pb, pa) * graded_commutator(y, graded_commutator(z, x)) +
                                 sign_of(pc, pb) * graded_commutator(z, graded_commutator(x, y));
        CHECK(jac.max_abs() < 1e-12);
      }
  CHECK((graded_commutator(a, b) - graded_commutator(a.even_part(), Parity::Even, b) -
         graded_commutator(a.odd_part(), Parity::Odd, b)).max_abs() < 1e-13);
}

TEST_CASE("indefinite inner product: unit matrices and hermiticity") {
  const GradedDims dims{1, 2};
  // -Str(E_ij^ E_ij) = -(-1)^{|j|} for even units; odd units pick up the adjoint sign
  CHECK(std::abs(indefinite_inner(GradedMatrix::identity(dims), GradedMatrix::identity(dims)) - 1.0) < 1e-15);
  std::mt19937_64 rng(6);
  const GradedMatrix f = random_graded(dims, rng), g = random_graded(dims, rng);
  CHECK(std::abs(indefinite_inner(f, g) - std::conj(indefinite_inner(g, f))) < 1e-13);
  CHECK(std::abs(indefinite_inner(f.even_part(), g.odd_part())) < 1e-14);
}

TEST_CASE("hs inner product of the identity") {
  const GradedMatrix id = GradedMatrix::identity({4, 0});
  CHECK(std::abs(hs_inner(id, id) - 1.0) < 1e-15);
}

TEST_CASE("dimension mismatches throw") {
  CHECK_THROWS_AS(GradedMatrix::identity({1, 1}) + GradedMatrix::identity({2, 0}), DimensionError);
  CHECK_THROWS_AS(GradedMatrix({1, 1}, Matrix::Zero(3, 3)), DimensionError);
}

TEST_CASE("permutations: count, sign, inverse, composition") {
  for (int p = 0; p <= 5; ++p) {
    const auto perms = all_permutations(p);
    int fact = 1;
    for (int k = 2; k <= p; ++k) fact *= k;
    CHECK(static_cast<int>(perms.size()) == fact);
    for (const auto& s : perms) {
      CHECK(is_permutation(s));
      CHECK(permutation_sign(s) == bubble_sign(s));
      const Permutation id = compose(s, inverse(s));
      for (int i = 0; i < p; ++i) CHECK(id[static_cast<std::size_t>(i)] == i);
    }
  }
  CHECK_FALSE(is_permutation(std::vector<int>{0, 0}));
}

TEST_CASE("commutation factor equals the graded bubble-sort sign") {
  const std::vector<std::vector<Parity>> patterns = {
      {Parity::Odd, Parity::Odd, Parity::Odd, Parity::Odd},
      {Parity::Even, Parity::Odd, Parity::Even, Parity::Odd},
      {Parity::Even, Parity::Even, Parity::Even, Parity::Even},
      {Parity::Odd, Parity::Even, Parity::Odd, Parity::Odd}};
  for (const auto& par : patterns)
    for (const auto& s : all_permutations(4)) CHECK(commutation_factor(s, par) == bubble_gamma(s, par));
}

TEST_CASE("numerical rank and margins") {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = 2.0;
  m(1, 1) = 1e-3;
  m(2, 2) = 1e-13;
  const RankReport r = rank_report(m, 1e-8);
  CHECK(r.rank == 2);
  CHECK(r.scale == doctest::Approx(2.0));
  CHECK(r.smallest_kept == doctest::Approx(5e-4));
  CHECK(r.largest_dropped == doctest::Approx(5e-14));
  CHECK(r.margin == doctest::Approx(std::min(5e-4 / 1e-8, 1e-8 / 5e-14)));
  CHECK(numerical_rank(Matrix::Zero(3, 3)) == 0);
  CHECK_THROWS(rank_report(m, 0.0));
}
