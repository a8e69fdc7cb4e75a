#include "fuzzsuper/graded.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

namespace fuzzsuper {

GradedDims::GradedDims(std::size_t even_dim, std::size_t odd_dim) : even(even_dim), odd(odd_dim) {
  if (even + odd == 0) throw DimensionError("graded space must have positive dimension");
}

GradedMatrix::GradedMatrix(GradedDims dims, Matrix entries) : dims_(dims), m_(std::move(entries)) {
  const auto n = static_cast<Eigen::Index>(dims_.total());
  if (m_.rows() != n || m_.cols() != n)
    throw DimensionError("matrix size " + std::to_string(m_.rows()) + "x" +
                         std::to_string(m_.cols()) + " does not match graded dimension " +
                         std::to_string(n));
}

GradedMatrix GradedMatrix::zero(GradedDims dims) {
  const auto n = static_cast<Eigen::Index>(dims.total());
  return {dims, Matrix::Zero(n, n)};
}

GradedMatrix GradedMatrix::identity(GradedDims dims) {
  const auto n = static_cast<Eigen::Index>(dims.total());
  return {dims, Matrix::Identity(n, n)};
}

GradedMatrix GradedMatrix::unit(GradedDims dims, std::size_t row, std::size_t col) {
  auto u = zero(dims);
  u.m_(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = 1.0;
  return u;
}

GradedMatrix GradedMatrix::even_part() const {
  GradedMatrix r = *this;
  const auto e = static_cast<Eigen::Index>(dims_.even);
  const auto o = static_cast<Eigen::Index>(dims_.odd);
  r.m_.topRightCorner(e, o).setZero();
  r.m_.bottomLeftCorner(o, e).setZero();
  return r;
}

GradedMatrix GradedMatrix::odd_part() const {
  GradedMatrix r = *this;
  const auto e = static_cast<Eigen::Index>(dims_.even);
  const auto o = static_cast<Eigen::Index>(dims_.odd);
  r.m_.topLeftCorner(e, e).setZero();
  r.m_.bottomRightCorner(o, o).setZero();
  return r;
}

std::optional<Parity> GradedMatrix::parity(double tol) const {
  const double odd_mass = odd_part().max_abs();
  const double even_mass = even_part().max_abs();
  if (odd_mass <= tol) return Parity::Even;
  if (even_mass <= tol) return Parity::Odd;
  return std::nullopt;
}

double GradedMatrix::max_abs() const {
  return m_.size() == 0 ? 0.0 : m_.cwiseAbs().maxCoeff();
}

GradedMatrix& GradedMatrix::operator+=(const GradedMatrix& o) {
  require_same_dims(*this, o, "addition");
  m_ += o.m_;
  return *this;
}

GradedMatrix& GradedMatrix::operator-=(const GradedMatrix& o) {
  require_same_dims(*this, o, "subtraction");
  m_ -= o.m_;
  return *this;
}

GradedMatrix& GradedMatrix::operator*=(Complex s) {
  m_ *= s;
  return *this;
}

GradedMatrix operator*(const GradedMatrix& a, const GradedMatrix& b) {
  require_same_dims(a, b, "product");
  return {a.dims(), a.matrix() * b.matrix()};
}

void require_same_dims(const GradedMatrix& a, const GradedMatrix& b, const char* what) {
  if (!(a.dims() == b.dims()))
    throw DimensionError(std::string("graded dimension mismatch in ") + what);
}

Complex supertrace(const GradedMatrix& m) {
  const auto e = static_cast<Eigen::Index>(m.dims().even);
  const auto o = static_cast<Eigen::Index>(m.dims().odd);
  return m.matrix().topLeftCorner(e, e).trace() - m.matrix().bottomRightCorner(o, o).trace();
}

GradedMatrix superadjoint(const GradedMatrix& m) {
  const auto e = static_cast<Eigen::Index>(m.dims().even);
  const auto o = static_cast<Eigen::Index>(m.dims().odd);
  const Matrix& a = m.matrix();
  Matrix r(e + o, e + o);
  r.topLeftCorner(e, e) = a.topLeftCorner(e, e).adjoint();
  r.bottomRightCorner(o, o) = a.bottomRightCorner(o, o).adjoint();
  // odd part [[0,B],[C,0]] -> [[0,-C^*],[B^*,0]]
  r.topRightCorner(e, o) = -a.bottomLeftCorner(o, e).adjoint();
  r.bottomLeftCorner(o, e) = a.topRightCorner(e, o).adjoint();
  return {m.dims(), std::move(r)};
}

Complex indefinite_inner(const GradedMatrix& f, const GradedMatrix& g) {
  require_same_dims(f, g, "indefinite_inner");
  return -supertrace(superadjoint(f) * g);
}

Complex hs_inner(const GradedMatrix& f, const GradedMatrix& g) {
  require_same_dims(f, g, "hs_inner");
  if (f.dims().odd != 0) throw DimensionError("hs_inner expects an ungraded (purely even) algebra");
  return (f.matrix().adjoint() * g.matrix()).trace() / static_cast<double>(f.size());
}

GradedMatrix graded_commutator(const GradedMatrix& a, Parity pa, const GradedMatrix& b) {
  require_same_dims(a, b, "graded_commutator");
  const Matrix& am = a.matrix();
  if (pa == Parity::Even) return {a.dims(), am * b.matrix() - b.matrix() * am};
  // odd a: commutator with the even part of b, anticommutator with the odd part
  const GradedMatrix be = b.even_part();
  const GradedMatrix bo = b.odd_part();
  Matrix r = am * b.matrix() - be.matrix() * am + bo.matrix() * am;
  return {a.dims(), std::move(r)};
}

GradedMatrix graded_commutator(const GradedMatrix& a, const GradedMatrix& b) {
  return graded_commutator(a.even_part(), Parity::Even, b) +
         graded_commutator(a.odd_part(), Parity::Odd, b);
}

bool is_permutation(std::span<const int> sigma) {
  std::vector<bool> seen(sigma.size(), false);
  for (int v : sigma) {
    if (v < 0 || static_cast<std::size_t>(v) >= sigma.size() || seen[static_cast<std::size_t>(v)])
      return false;
    seen[static_cast<std::size_t>(v)] = true;
  }
  return true;
}

Permutation inverse(std::span<const int> sigma) {
  Permutation inv(sigma.size());
  for (std::size_t i = 0; i < sigma.size(); ++i) inv[static_cast<std::size_t>(sigma[i])] = static_cast<int>(i);
  return inv;
}

Permutation compose(std::span<const int> sigma, std::span<const int> tau) {
  if (sigma.size() != tau.size()) throw DimensionError("compose: permutation sizes differ");
  Permutation r(sigma.size());
  for (std::size_t i = 0; i < tau.size(); ++i) r[i] = sigma[static_cast<std::size_t>(tau[i])];
  return r;
}

int permutation_sign(std::span<const int> sigma) {
  int inversions = 0;
  for (std::size_t i = 0; i < sigma.size(); ++i)
    for (std::size_t k = i + 1; k < sigma.size(); ++k)
      if (sigma[i] > sigma[k]) ++inversions;
  return inversions % 2 == 0 ? 1 : -1;
}

std::vector<Permutation> all_permutations(int p) {
  Permutation cur(static_cast<std::size_t>(p));
  std::iota(cur.begin(), cur.end(), 0);
  std::vector<Permutation> out;
  do {
    out.push_back(cur);
  } while (std::next_permutation(cur.begin(), cur.end()));
  return out;
}

int commutation_factor(std::span<const int> sigma, std::span<const Parity> parities) {
  if (sigma.size() != parities.size())
    throw DimensionError("commutation_factor: permutation and parity list differ in length");
  const Permutation inv = inverse(sigma);
  int sign = 1;
  for (std::size_t r = 0; r < sigma.size(); ++r)
    for (std::size_t s = r + 1; s < sigma.size(); ++s)
      if (inv[r] > inv[s] && parities[r] == Parity::Odd && parities[s] == Parity::Odd) sign = -sign;
  return sign;
}

RankReport rank_report(const Matrix& m, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("numerical_rank: tolerance must be positive");
  RankReport rep;
  if (m.size() == 0) {
    rep.margin = std::numeric_limits<double>::infinity();
    return rep;
  }
  Eigen::BDCSVD<Matrix> svd(m);
  const auto& sv = svd.singularValues();
  rep.scale = std::max(sv.size() > 0 ? sv(0) : 0.0, 1.0);
  const double cut = tol * rep.scale;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > cut) {
      ++rep.rank;
      rep.smallest_kept = sv(i) / rep.scale;
    } else {
      rep.largest_dropped = std::max(rep.largest_dropped, sv(i) / rep.scale);
    }
  }
  const double inf = std::numeric_limits<double>::infinity();
  const double kept_side = rep.rank > 0 ? rep.smallest_kept / tol : inf;
  const double dropped_side = rep.largest_dropped > 0.0 ? tol / rep.largest_dropped : inf;
  rep.margin = std::min(kept_side, dropped_side);
  return rep;
}

std::size_t numerical_rank(const Matrix& m, double tol) { return rank_report(m, tol).rank; }

}  // namespace fuzzsuper
