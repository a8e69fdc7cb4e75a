#include "fuzzsuper/cohomology.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace fuzzsuper {

namespace {

void require_pmax(int p_max) {
  if (p_max < 0 || p_max + 1 > kMaxFormDegree)
    throw std::out_of_range("p_max must lie in 0.." + std::to_string(kMaxFormDegree - 1));
}

// kron(I_d, b): block-diagonal embedding of W (x) Lambda^p into the flattened forms.
Matrix block_embedding(const Matrix& b, std::size_t d) {
  const auto n = b.rows(), k = b.cols();
  const auto dd = static_cast<Eigen::Index>(d);
  Matrix out = Matrix::Zero(n * dd, k * dd);
  for (Eigen::Index i = 0; i < dd; ++i) out.block(i * n, i * k, n, k) = b;
  return out;
}

Matrix orthonormal_columns(const Matrix& b, double tol) {
  if (b.size() == 0) return Matrix(b.rows(), 0);
  Eigen::BDCSVD<Matrix> svd(b, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  const double cut = tol * std::max(sv.size() > 0 ? sv(0) : 0.0, 1.0);
  Eigen::Index r = 0;
  while (r < sv.size() && sv(r) > cut) ++r;
  return svd.matrixU().leftCols(r);
}

CohomologyReport assemble(const std::vector<std::size_t>& dims, const std::vector<RankReport>& ranks, double tol) {
  CohomologyReport rep;
  rep.tol = tol;
  for (std::size_t p = 0; p < dims.size(); ++p) {
    DegreeReport d;
    d.p = static_cast<int>(p);
    d.form_dim = dims[p];
    d.rank_detail = ranks[p];
    d.rank_d = ranks[p].rank;
    const std::size_t below = p == 0 ? 0 : ranks[p - 1].rank;
    if (d.rank_d + below > d.form_dim) throw std::logic_error("rank exceeds cochain dimension: d^2 != 0 numerically");
    d.betti = d.form_dim - d.rank_d - below;
    rep.degrees.push_back(d);
  }
  return rep;
}

Vector vec_identity(GradedDims dims) {
  return vectorize(GradedMatrix::identity(dims));
}

}  // namespace

Vector form_vector(const SuperForm& w) {
  const auto big_n = static_cast<Eigen::Index>(w.context()->algebra_dim());
  Vector v(big_n * static_cast<Eigen::Index>(w.coeffs().size()));
  for (std::size_t i = 0; i < w.coeffs().size(); ++i)
    v.segment(static_cast<Eigen::Index>(i) * big_n, big_n) = vectorize(w.coeff(i));
  return v;
}

SuperForm form_from_vector(ContextPtr ctx, int p, const Eigen::Ref<const Vector>& v) {
  const auto big_n = static_cast<Eigen::Index>(ctx->algebra_dim());
  const std::size_t d = ctx->gind_size(p);
  if (v.size() != big_n * static_cast<Eigen::Index>(d)) throw DimensionError("flattened form has the wrong length");
  SuperForm w(ctx, p);
  for (std::size_t i = 0; i < d; ++i)
    w.set_coeff(i, unvectorize(ctx->dims(), v.segment(static_cast<Eigen::Index>(i) * big_n, big_n)));
  return w;
}

Matrix form_operator_matrix(const ContextPtr& ctx, int p, int p_out,
                            const std::function<SuperForm(const SuperForm&)>& op) {
  const std::size_t n = ctx->dims().total();
  const auto big_n = static_cast<Eigen::Index>(n * n);
  const std::size_t d_in = ctx->gind_size(p);
  const std::size_t d_out = ctx->gind_size(p_out);
  Matrix m(big_n * static_cast<Eigen::Index>(d_out), big_n * static_cast<Eigen::Index>(d_in));
  SuperForm unit(ctx, p);
  const GradedMatrix zero = GradedMatrix::zero(ctx->dims());
  for (std::size_t i = 0; i < d_in; ++i)
    for (std::size_t c = 0; c < n; ++c)
      for (std::size_t r = 0; r < n; ++r) {
        unit.set_coeff(i, GradedMatrix::unit(ctx->dims(), r, c));
        const SuperForm out = op(unit);
        if (out.degree() != p_out) throw std::logic_error("form operator returned an unexpected degree");
        m.col(static_cast<Eigen::Index>(i) * big_n + static_cast<Eigen::Index>(r + c * n)) = form_vector(out);
        unit.set_coeff(i, zero);
      }
  return m;
}

Matrix d_matrix(const ContextPtr& ctx, int p) {
  return form_operator_matrix(ctx, p, p + 1, [](const SuperForm& w) { return exterior_d(w); });
}

Matrix lie_derivative_matrix(const ContextPtr& ctx, int a, int p) {
  return form_operator_matrix(ctx, p, p, [a](const SuperForm& w) { return lie_derivative(a, w); });
}

std::vector<std::size_t> CohomologyReport::betti() const {
  std::vector<std::size_t> b;
  for (const auto& d : degrees) b.push_back(d.betti);
  return b;
}

double CohomologyReport::min_margin() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& d : degrees) m = std::min(m, d.rank_detail.margin);
  return m;
}

CohomologyReport cohomology_dims(const ContextPtr& ctx, int p_max, double tol) {
  require_pmax(p_max);
  std::vector<std::size_t> dims;
  std::vector<RankReport> ranks;
  for (int p = 0; p <= p_max; ++p) {
    dims.push_back(ctx->algebra_dim() * ctx->gind_size(p));
    ranks.push_back(rank_report(d_matrix(ctx, p), tol));
  }
  return assemble(dims, ranks, tol);
}

CohomologyReport restricted_cohomology(const ContextPtr& ctx, const Matrix& basis, int p_max, double tol) {
  require_pmax(p_max);
  if (basis.rows() != static_cast<Eigen::Index>(ctx->algebra_dim()))
    throw DimensionError("coefficient basis rows must equal the algebra dimension");
  const Matrix b = orthonormal_columns(basis, tol);
  const auto k = static_cast<std::size_t>(b.cols());
  std::vector<std::size_t> dims;
  std::vector<RankReport> ranks;
  for (int p = 0; p <= p_max; ++p) {
    const std::size_t d = ctx->gind_size(p);
    dims.push_back(k * d);
    const Matrix image = d_matrix(ctx, p) * block_embedding(b, d);
    ranks.push_back(rank_report(image, tol));
  }
  return assemble(dims, ranks, tol);
}

std::map<int, Matrix> isotypic_bases(const FuzzySuperSphere& sphere) {
  std::map<int, std::vector<std::size_t>> members;
  for (std::size_t i = 0; i < sphere.labels().size(); ++i) members[sphere.labels()[i].j2].push_back(i);
  std::map<int, Matrix> out;
  const auto big_n = static_cast<Eigen::Index>(sphere.dims().total() * sphere.dims().total());
  for (const auto& [j2, idx] : members) {
    Matrix b(big_n, static_cast<Eigen::Index>(idx.size()));
    for (std::size_t c = 0; c < idx.size(); ++c) b.col(static_cast<Eigen::Index>(c)) = vectorize(sphere.harmonics()[idx[c]]);
    out.emplace(j2, std::move(b));
  }
  return out;
}

std::map<int, Matrix> isotypic_bases(const FuzzySphere& sphere) {
  std::map<int, std::vector<std::size_t>> members;
  for (std::size_t i = 0; i < sphere.labels().size(); ++i) members[2 * sphere.labels()[i].j].push_back(i);
  std::map<int, Matrix> out;
  const auto big_n = static_cast<Eigen::Index>(sphere.dims().total() * sphere.dims().total());
  for (const auto& [j2, idx] : members) {
    Matrix b(big_n, static_cast<Eigen::Index>(idx.size()));
    for (std::size_t c = 0; c < idx.size(); ++c) b.col(static_cast<Eigen::Index>(c)) = vectorize(sphere.harmonics()[idx[c]]);
    out.emplace(j2, std::move(b));
  }
  return out;
}

std::size_t invariant_form_dimension(const ContextPtr& ctx, int p, double tol) {
  const auto dim = static_cast<Eigen::Index>(ctx->algebra_dim() * ctx->gind_size(p));
  Matrix stacked(dim * ctx->size(), dim);
  for (int a = 0; a < ctx->size(); ++a) stacked.middleRows(a * dim, dim) = lie_derivative_matrix(ctx, a, p);
  return static_cast<std::size_t>(dim) - numerical_rank(stacked, tol);
}

SuperForm center_cohomology_generator(const ContextPtr& ctx, int p, double tol) {
  if (p < 0 || p + 1 > kMaxFormDegree) throw std::out_of_range("degree out of range");
  const Vector u = vec_identity(ctx->dims()).normalized();
  auto center_d = [&](int deg) {
    return Matrix(block_embedding(u, ctx->gind_size(deg + 1)).adjoint() * d_matrix(ctx, deg) *
                  block_embedding(u, ctx->gind_size(deg)));
  };
  const auto dp = static_cast<Eigen::Index>(ctx->gind_size(p));
  // kernel of d_p on center-valued forms
  Matrix kernel;
  {
    const Matrix cp = center_d(p);
    if (cp.rows() == 0) {
      kernel = Matrix::Identity(dp, dp);
    } else {
      Eigen::BDCSVD<Matrix> svd(cp, Eigen::ComputeFullV);
      const std::size_t r = rank_report(cp, tol).rank;
      kernel = svd.matrixV().rightCols(dp - static_cast<Eigen::Index>(r));
    }
  }
  // remove the exact part
  if (p > 0) {
    const Matrix q = orthonormal_columns(center_d(p - 1), tol);
    if (q.cols() > 0) kernel -= q * (q.adjoint() * kernel);
  }
  const std::size_t h = kernel.cols() == 0 ? 0 : rank_report(kernel, tol).rank;
  if (h != 1)
    throw std::runtime_error("center-valued cohomology in degree " + std::to_string(p) + " has dimension " +
                             std::to_string(h) + ", expected 1");
  Eigen::BDCSVD<Matrix> svd(kernel, Eigen::ComputeThinU);
  Vector g = svd.matrixU().col(0);
  Eigen::Index big = 0;
  g.cwiseAbs().maxCoeff(&big);
  g *= std::abs(g(big)) / g(big);
  SuperForm w(ctx, p);
  const GradedMatrix id = GradedMatrix::identity(ctx->dims());
  for (Eigen::Index i = 0; i < dp; ++i) w.set_coeff(static_cast<std::size_t>(i), g(i) * id);
  return w;
}

BodyCompatibility body_cohomology_check(const ContextPtr& super_ctx, const FuzzySuperSphere& super_sphere,
                                        const ContextPtr& body_ctx, const FuzzySphere& body_sphere, int p,
                                        double tol) {
  if (p < 1) throw std::invalid_argument("body_cohomology_check needs p >= 1");
  BodyCompatibility r;
  r.p = p;
  const SuperForm w = center_cohomology_generator(super_ctx, p, tol);
  r.super_closed_residual = exterior_d(w).max_abs();
  const SuperForm b = body_cochain_map(w, super_sphere, body_sphere, body_ctx);
  r.body_closed_residual = exterior_d(b).max_abs();
  const Vector bv = form_vector(b);
  r.body_norm = bv.norm();
  const Matrix prev = d_matrix(body_ctx, p - 1);
  const Matrix q = orthonormal_columns(prev, tol);
  const Vector resid = q.cols() > 0 ? Vector(bv - q * (q.adjoint() * bv)) : bv;
  r.distance_to_exact = r.body_norm > 0.0 ? resid.norm() / r.body_norm : 0.0;
  Matrix aug(prev.rows(), prev.cols() + 1);
  aug << prev, bv;
  r.exactness_rank = rank_report(aug, tol);
  r.non_exact = r.exactness_rank.rank == static_cast<std::size_t>(q.cols()) + 1;
  return r;
}

}  // namespace fuzzsuper
