#include "fuzzsuper/calculus.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace fuzzsuper {

namespace {

double sign_pow(int e) { return (e % 2 == 0) ? 1.0 : -1.0; }

int par(Parity p) { return to_int(p); }

void enumerate_odd(int first_odd, int n, int remaining, IndexTuple& cur, std::vector<IndexTuple>& out) {
  if (remaining == 0) {
    out.push_back(cur);
    return;
  }
  const int start = cur.empty() || cur.back() < first_odd ? first_odd : cur.back();
  for (int a = start; a < n; ++a) {
    cur.push_back(a);
    enumerate_odd(first_odd, n, remaining - 1, cur, out);
    cur.pop_back();
  }
}

void enumerate_even(int n_even, int n, int p, IndexTuple& cur, std::vector<IndexTuple>& out) {
  // cur holds strictly increasing evens; branch on stopping here or adding another even
  enumerate_odd(n_even, n, p - static_cast<int>(cur.size()), cur, out);
  if (static_cast<int>(cur.size()) == p) return;
  const int start = cur.empty() ? 0 : cur.back() + 1;
  for (int a = start; a < n_even; ++a) {
    cur.push_back(a);
    enumerate_even(n_even, n, p, cur, out);
    cur.pop_back();
  }
}

std::vector<IndexTuple> build_gind(int n_even, int n, int p) {
  std::vector<IndexTuple> out;
  IndexTuple cur;
  if (n_even == n) {
    // no odd generators: only strictly increasing tuples of length p
    std::vector<IndexTuple> all;
    enumerate_even(n_even, n, p, cur, all);
    for (auto& t : all)
      if (static_cast<int>(t.size()) == p) out.push_back(std::move(t));
  } else {
    enumerate_even(n_even, n, p, cur, out);
  }
  std::sort(out.begin(), out.end());
  return out;
}

double factorial(int n) {
  double r = 1.0;
  for (int k = 2; k <= n; ++k) r *= k;
  return r;
}

void require_same_context(const SuperForm& a, const SuperForm& b, const char* what) {
  if (a.context() != b.context()) throw std::invalid_argument(std::string(what) + ": forms live on different contexts");
}

}  // namespace

std::size_t gind_count(int n_even, int n_odd, int p) {
  auto binom = [](int n, int k) -> std::size_t {
    if (k < 0 || k > n) return 0;
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return static_cast<std::size_t>(r + 0.5);
  };
  std::size_t total = 0;
  for (int pe = 0; pe <= std::min(n_even, p); ++pe) {
    const int po = p - pe;
    const std::size_t multisets = n_odd == 0 ? (po == 0 ? 1 : 0) : binom(n_odd + po - 1, po);
    total += binom(n_even, pe) * multisets;
  }
  return total;
}

DerivationContext::DerivationContext(GradedDims dims, std::vector<GradedMatrix> generators,
                                     std::vector<Parity> parities, std::vector<Complex> structure_constants)
    : dims_(dims), generators_(std::move(generators)), parities_(std::move(parities)), c_(std::move(structure_constants)) {
  const std::size_t n = generators_.size();
  if (n == 0) throw std::invalid_argument("derivation context needs at least one generator");
  if (parities_.size() != n) throw std::invalid_argument("one parity per generator required");
  if (c_.size() != n * n * n) throw std::invalid_argument("structure constant table has the wrong size");
  for (const auto& g : generators_)
    if (!(g.dims() == dims_)) throw DimensionError("generator dimension does not match the algebra");
  n_even_ = 0;
  while (n_even_ < static_cast<int>(n) && parities_[static_cast<std::size_t>(n_even_)] == Parity::Even) ++n_even_;
  for (std::size_t a = static_cast<std::size_t>(n_even_); a < n; ++a)
    if (parities_[a] == Parity::Even) throw std::invalid_argument("even generators must precede odd ones");
  gind_.resize(kMaxFormDegree + 1);
  gind_index_.resize(kMaxFormDegree + 1);
  for (int p = 0; p <= kMaxFormDegree; ++p) {
    gind_[static_cast<std::size_t>(p)] = build_gind(n_even_, static_cast<int>(n), p);
    auto& idx = gind_index_[static_cast<std::size_t>(p)];
    for (std::size_t i = 0; i < gind_[static_cast<std::size_t>(p)].size(); ++i)
      idx.emplace(gind_[static_cast<std::size_t>(p)][i], i);
  }
}

ContextPtr DerivationContext::from_super(const Irrep& rep) {
  const OspBasis basis = build_osp_basis();
  const auto g = rep.generators();
  std::vector<Complex> c(kOspDim * kOspDim * kOspDim);
  for (int a = 0; a < kOspDim; ++a)
    for (int b = 0; b < kOspDim; ++b)
      for (int cc = 0; cc < kOspDim; ++cc) c[static_cast<std::size_t>((a * kOspDim + b) * kOspDim + cc)] = basis.c[a][b][cc];
  return std::make_shared<const DerivationContext>(
      rep.dims(), std::vector<GradedMatrix>(g.begin(), g.end()),
      std::vector<Parity>(basis.parity.begin(), basis.parity.end()), std::move(c));
}

ContextPtr DerivationContext::from_body(const Sl2Irrep& rep) {
  const OspBasis basis = build_sl2_basis();
  std::vector<Complex> c(kSl2Dim * kSl2Dim * kSl2Dim);
  for (int a = 0; a < kSl2Dim; ++a)
    for (int b = 0; b < kSl2Dim; ++b)
      for (int cc = 0; cc < kSl2Dim; ++cc) c[static_cast<std::size_t>((a * kSl2Dim + b) * kSl2Dim + cc)] = basis.c[a][b][cc];
  return std::make_shared<const DerivationContext>(
      rep.dims(), std::vector<GradedMatrix>{rep.J1(), rep.J2(), rep.J3()},
      std::vector<Parity>(kSl2Dim, Parity::Even), std::move(c));
}

ContextPtr DerivationContext::transformed(const Matrix& m) const {
  const int n = size();
  if (m.rows() != n || m.cols() != n) throw DimensionError("basis change has the wrong size");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (parity(a) != parity(b) && std::abs(m(a, b)) != 0.0)
        throw std::invalid_argument("basis change must preserve parity");
  Eigen::FullPivLU<Matrix> lu(m);
  if (!lu.isInvertible()) throw std::invalid_argument("basis change must be invertible");
  const Matrix minv = lu.inverse();
  std::vector<GradedMatrix> gens;
  for (int a = 0; a < n; ++a) {
    GradedMatrix e = GradedMatrix::zero(dims_);
    for (int b = 0; b < n; ++b)
      if (m(b, a) != 0.0) e += m(b, a) * generator(b);
    gens.push_back(std::move(e));
  }
  const auto un = static_cast<std::size_t>(n);
  std::vector<Complex> c2(un * un * un);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int cc = 0; cc < n; ++cc) {
        Complex s = 0.0;
        for (int x = 0; x < n; ++x)
          for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z) {
              const Complex cxyz = c(x, y, z);
              if (cxyz != 0.0) s += minv(a, x) * m(y, b) * m(z, cc) * cxyz;
            }
        c2[(static_cast<std::size_t>(a) * un + static_cast<std::size_t>(b)) * un + static_cast<std::size_t>(cc)] = s;
      }
  return std::make_shared<const DerivationContext>(dims_, std::move(gens), parities_, std::move(c2));
}

GradedMatrix DerivationContext::act(int a, const GradedMatrix& x) const {
  return graded_commutator(generator(a), parity(a), x);
}

double DerivationContext::closure_residual() const {
  const std::size_t n = dims_.total();
  double r = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const GradedMatrix u = GradedMatrix::unit(dims_, i, j);
      for (int b = 0; b < size(); ++b)
        for (int cc = 0; cc < size(); ++cc) {
          GradedMatrix lhs = act(b, act(cc, u)) - sign_of(parity(b), parity(cc)) * act(cc, act(b, u));
          for (int a = 0; a < size(); ++a)
            if (c(a, b, cc) != 0.0) lhs -= c(a, b, cc) * act(a, u);
          r = std::max(r, lhs.max_abs());
        }
    }
  return r;
}

std::size_t DerivationContext::center_dimension(double tol) const {
  const auto big_n = static_cast<Eigen::Index>(algebra_dim());
  Matrix stacked(big_n * size(), big_n);
  for (int a = 0; a < size(); ++a)
    stacked.middleRows(a * big_n, big_n) = superoperator_matrix(dims_, [&](const GradedMatrix& x) { return act(a, x); });
  return algebra_dim() - numerical_rank(stacked, tol);
}

const std::vector<IndexTuple>& DerivationContext::gind(int p) const {
  if (p < 0 || p > kMaxFormDegree)
    throw std::out_of_range("form degree " + std::to_string(p) + " outside 0.." + std::to_string(kMaxFormDegree));
  return gind_[static_cast<std::size_t>(p)];
}

std::optional<std::size_t> DerivationContext::gind_index(const IndexTuple& t) const {
  const auto& idx = gind_index_.at(t.size());
  auto it = idx.find(t);
  if (it == idx.end()) return std::nullopt;
  return it->second;
}

int DerivationContext::odd_count(std::span<const int> t) const {
  int k = 0;
  for (int a : t) k += par(parity(a));
  return k;
}

double DerivationContext::canonical_factor(const IndexTuple& t) const {
  const int podd = odd_count(t);
  double f = sign_pow(podd * (podd - 1) / 2);
  std::size_t i = 0;
  while (i < t.size()) {
    std::size_t k = i;
    while (k < t.size() && t[k] == t[i]) ++k;
    f *= factorial(static_cast<int>(k - i));
    i = k;
  }
  return f;
}

std::optional<DerivationContext::Lookup> DerivationContext::lookup(std::span<const int> t) const {
  const std::size_t p = t.size();
  for (int a : t)
    if (a < 0 || a >= size()) throw std::out_of_range("generator index out of range in form argument");
  Permutation sigma(p);
  std::iota(sigma.begin(), sigma.end(), 0);
  std::stable_sort(sigma.begin(), sigma.end(), [&](int x, int y) { return t[static_cast<std::size_t>(x)] < t[static_cast<std::size_t>(y)]; });
  IndexTuple sorted(p);
  for (std::size_t i = 0; i < p; ++i) sorted[i] = t[static_cast<std::size_t>(sigma[i])];
  for (std::size_t i = 1; i < p; ++i)
    if (sorted[i] == sorted[i - 1] && parity(sorted[i]) == Parity::Even) return std::nullopt;
  std::vector<Parity> pars(p);
  for (std::size_t i = 0; i < p; ++i) pars[i] = parity(t[i]);
  const auto idx = gind_index(sorted);
  if (!idx) throw std::logic_error("sorted tuple missing from GInd");
  const double f = permutation_sign(sigma) * commutation_factor(sigma, pars) * canonical_factor(sorted);
  return Lookup{*idx, f};
}

Matrix superoperator_matrix(GradedDims dims, const std::function<GradedMatrix(const GradedMatrix&)>& op) {
  const std::size_t n = dims.total();
  const auto big_n = static_cast<Eigen::Index>(n * n);
  Matrix m(big_n, big_n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) {
      const auto col = static_cast<Eigen::Index>(i + j * n);
      m.col(col) = vectorize(op(GradedMatrix::unit(dims, i, j)));
    }
  return m;
}

Vector vectorize(const GradedMatrix& m) {
  return Eigen::Map<const Vector>(m.matrix().data(), m.matrix().size());
}

GradedMatrix unvectorize(GradedDims dims, const Eigen::Ref<const Vector>& v) {
  const auto n = static_cast<Eigen::Index>(dims.total());
  if (v.size() != n * n) throw DimensionError("vector length does not match the algebra dimension");
  Matrix m(n, n);
  for (Eigen::Index j = 0; j < n; ++j) m.col(j) = v.segment(j * n, n);
  return {dims, std::move(m)};
}

// ---------------------------------------------------------------------------

SuperForm::SuperForm(ContextPtr ctx, int p) : ctx_(std::move(ctx)), p_(p) {
  if (!ctx_) throw std::invalid_argument("superform needs a context");
  coeffs_.assign(ctx_->gind_size(p), GradedMatrix::zero(ctx_->dims()));
}

SuperForm SuperForm::from_coefficients(ContextPtr ctx, int p, std::vector<GradedMatrix> coeffs) {
  SuperForm w(std::move(ctx), p);
  if (coeffs.size() != w.coeffs_.size())
    throw DimensionError("expected " + std::to_string(w.coeffs_.size()) + " coefficients, got " +
                         std::to_string(coeffs.size()));
  for (std::size_t i = 0; i < coeffs.size(); ++i) w.set_coeff(i, std::move(coeffs[i]));
  return w;
}

SuperForm SuperForm::zero_form(ContextPtr ctx, const GradedMatrix& f) {
  return from_coefficients(std::move(ctx), 0, {f});
}

GradedMatrix SuperForm::coeff(const IndexTuple& t) const {
  const auto idx = ctx_->gind_index(t);
  if (!idx) throw std::invalid_argument("index tuple is not in GInd_p");
  return coeffs_[*idx];
}

void SuperForm::set_coeff(std::size_t i, GradedMatrix m) {
  if (!(m.dims() == ctx_->dims())) throw DimensionError("coefficient has the wrong graded dimension");
  coeffs_.at(i) = std::move(m);
}

GradedMatrix SuperForm::value(std::span<const int> t) const {
  if (static_cast<int>(t.size()) != p_)
    throw std::invalid_argument("form of degree " + std::to_string(p_) + " evaluated on " +
                                std::to_string(t.size()) + " arguments");
  const auto lk = ctx_->lookup(t);
  if (!lk) return GradedMatrix::zero(ctx_->dims());
  return lk->factor * coeffs_[lk->index];
}

SuperForm SuperForm::part(Parity parity) const {
  SuperForm r(ctx_, p_);
  const auto& g = ctx_->gind(p_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    r.coeffs_[i] = coeffs_[i].part(parity + ctx_->tuple_parity(g[i]));
  return r;
}

std::optional<Parity> SuperForm::parity(double tol) const {
  const double e = part(Parity::Even).max_abs();
  const double o = part(Parity::Odd).max_abs();
  if (o <= tol) return Parity::Even;
  if (e <= tol) return Parity::Odd;
  return std::nullopt;
}

double SuperForm::max_abs() const {
  double r = 0.0;
  for (const auto& c : coeffs_) r = std::max(r, c.max_abs());
  return r;
}

SuperForm& SuperForm::operator+=(const SuperForm& o) {
  require_same_context(*this, o, "form addition");
  if (o.p_ != p_) throw std::invalid_argument("form addition: degrees differ");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

SuperForm& SuperForm::operator-=(const SuperForm& o) {
  require_same_context(*this, o, "form subtraction");
  if (o.p_ != p_) throw std::invalid_argument("form subtraction: degrees differ");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  return *this;
}

SuperForm& SuperForm::operator*=(Complex s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

SuperForm form_from_values(ContextPtr ctx, int p, std::vector<GradedMatrix> values) {
  const auto& g = ctx->gind(p);
  if (values.size() != g.size()) throw DimensionError("one value per canonical tuple required");
  for (std::size_t i = 0; i < g.size(); ++i) values[i] *= Complex(1.0 / ctx->canonical_factor(g[i]));
  return SuperForm::from_coefficients(std::move(ctx), p, std::move(values));
}

namespace {

// Homogeneous component together with a non-zero mask for fast skipping.
struct HomPart {
  SuperForm form;
  Parity parity;
  std::vector<bool> nonzero;
  bool empty = true;
};

std::vector<HomPart> split(const SuperForm& w) {
  std::vector<HomPart> out;
  for (Parity p : {Parity::Even, Parity::Odd}) {
    HomPart h{w.part(p), p, {}, true};
    h.nonzero.resize(h.form.coeffs().size());
    for (std::size_t i = 0; i < h.nonzero.size(); ++i) {
      h.nonzero[i] = h.form.coeff(i).max_abs() > 0.0;
      if (h.nonzero[i]) h.empty = false;
    }
    if (!h.empty) out.push_back(std::move(h));
  }
  return out;
}

// Adds scale * w(t) to acc when the value is structurally non-zero.
void accumulate(GradedMatrix& acc, const HomPart& h, std::span<const int> t, Complex scale) {
  const auto lk = h.form.context()->lookup(t);
  if (!lk || !h.nonzero[lk->index]) return;
  acc += (scale * lk->factor) * h.form.coeff(lk->index);
}

}  // namespace

GradedMatrix eval_superform(const SuperForm& w, const std::vector<std::vector<Complex>>& derivations) {
  const auto& ctx = *w.context();
  const int p = w.degree();
  if (static_cast<int>(derivations.size()) != p) throw std::invalid_argument("eval_superform: wrong number of arguments");
  for (const auto& d : derivations)
    if (static_cast<int>(d.size()) != ctx.size()) throw DimensionError("derivation coefficient vector has the wrong size");
  GradedMatrix acc = GradedMatrix::zero(ctx.dims());
  IndexTuple t(static_cast<std::size_t>(p), 0);
  const int n = ctx.size();
  std::size_t total = 1;
  for (int i = 0; i < p; ++i) total *= static_cast<std::size_t>(n);
  for (std::size_t k = 0; k < total; ++k) {
    std::size_t rem = k;
    Complex coef = 1.0;
    for (int i = 0; i < p; ++i) {
      t[static_cast<std::size_t>(i)] = static_cast<int>(rem % static_cast<std::size_t>(n));
      rem /= static_cast<std::size_t>(n);
      coef *= derivations[static_cast<std::size_t>(i)][static_cast<std::size_t>(t[static_cast<std::size_t>(i)])];
    }
    if (coef == 0.0) continue;
    const auto lk = ctx.lookup(t);
    if (lk) acc += (coef * lk->factor) * w.coeff(lk->index);
  }
  return acc;
}

SuperForm wedge(const SuperForm& w1, const SuperForm& w2) {
  require_same_context(w1, w2, "wedge");
  const ContextPtr& ctxp = w1.context();
  const auto& ctx = *ctxp;
  const int p1 = w1.degree(), p2 = w2.degree(), p = p1 + p2;
  const auto& g = ctx.gind(p);
  const auto perms = all_permutations(p);
  const double norm = 1.0 / (factorial(p1) * factorial(p2));
  const auto parts1 = split(w1);
  const auto parts2 = split(w2);
  std::vector<GradedMatrix> values(g.size(), GradedMatrix::zero(ctx.dims()));
  IndexTuple left(static_cast<std::size_t>(p1)), right(static_cast<std::size_t>(p2));
  std::vector<Parity> pars(static_cast<std::size_t>(p));
  for (std::size_t j = 0; j < g.size(); ++j) {
    const IndexTuple& t = g[j];
    for (std::size_t i = 0; i < t.size(); ++i) pars[i] = ctx.parity(t[i]);
    for (const auto& sigma : perms) {
      int left_odd = 0;
      for (int i = 0; i < p1; ++i) {
        left[static_cast<std::size_t>(i)] = t[static_cast<std::size_t>(sigma[static_cast<std::size_t>(i)])];
        left_odd += par(ctx.parity(left[static_cast<std::size_t>(i)]));
      }
      for (int i = 0; i < p2; ++i)
        right[static_cast<std::size_t>(i)] = t[static_cast<std::size_t>(sigma[static_cast<std::size_t>(p1 + i)])];
      const auto l1 = ctx.lookup(left);
      const auto l2 = ctx.lookup(right);
      if (!l1 || !l2) continue;
      const double base = norm * permutation_sign(sigma) * commutation_factor(sigma, pars) * l1->factor * l2->factor;
      for (const auto& h2 : parts2) {
        if (!h2.nonzero[l2->index]) continue;
        const double s = base * sign_pow(par(h2.parity) * left_odd);
        for (const auto& h1 : parts1) {
          if (!h1.nonzero[l1->index]) continue;
          values[j] += s * (h1.form.coeff(l1->index) * h2.form.coeff(l2->index));
        }
      }
    }
  }
  return form_from_values(ctxp, p, std::move(values));
}

SuperForm lie_derivative(int a, const SuperForm& w) {
  const ContextPtr& ctxp = w.context();
  const auto& ctx = *ctxp;
  if (a < 0 || a >= ctx.size()) throw std::out_of_range("derivation index out of range");
  const int p = w.degree();
  const auto& g = ctx.gind(p);
  const int pa = par(ctx.parity(a));
  std::vector<GradedMatrix> values(g.size(), GradedMatrix::zero(ctx.dims()));
  for (const auto& h : split(w)) {
    for (std::size_t j = 0; j < g.size(); ++j) {
      const IndexTuple& t = g[j];
      values[j] += ctx.act(a, h.form.value(t));
      int prefix = 0;
      IndexTuple mod = t;
      for (int l = 0; l < p; ++l) {
        const double s = -sign_pow(pa * (par(h.parity) + prefix));
        for (int cc = 0; cc < ctx.size(); ++cc) {
          const Complex coef = ctx.c(cc, a, t[static_cast<std::size_t>(l)]);
          if (coef == 0.0) continue;
          mod[static_cast<std::size_t>(l)] = cc;
          accumulate(values[j], h, mod, s * coef);
        }
        mod[static_cast<std::size_t>(l)] = t[static_cast<std::size_t>(l)];
        prefix += par(ctx.parity(t[static_cast<std::size_t>(l)]));
      }
    }
  }
  return form_from_values(ctxp, p, std::move(values));
}

SuperForm interior(int a, const SuperForm& w) {
  const ContextPtr& ctxp = w.context();
  const auto& ctx = *ctxp;
  if (a < 0 || a >= ctx.size()) throw std::out_of_range("derivation index out of range");
  const int p = w.degree();
  if (p == 0) return SuperForm(ctxp, 0);
  const auto& g = ctx.gind(p - 1);
  std::vector<GradedMatrix> values;
  values.reserve(g.size());
  IndexTuple t;
  for (const auto& tail : g) {
    t.assign(1, a);
    t.insert(t.end(), tail.begin(), tail.end());
    values.push_back(w.value(t));
  }
  return form_from_values(ctxp, p - 1, std::move(values));
}

SuperForm exterior_d(const SuperForm& w) {
  const ContextPtr& ctxp = w.context();
  const auto& ctx = *ctxp;
  const int p = w.degree();
  const auto& g = ctx.gind(p + 1);
  std::vector<GradedMatrix> values(g.size(), GradedMatrix::zero(ctx.dims()));
  IndexTuple sub(static_cast<std::size_t>(p));
  for (const auto& h : split(w)) {
    const int pw = par(h.parity);
    for (std::size_t j = 0; j < g.size(); ++j) {
      const IndexTuple& t = g[j];
      int prefix = 0;
      for (int l = 0; l <= p; ++l) {
        const int pl = par(ctx.parity(t[static_cast<std::size_t>(l)]));
        const double s = sign_pow(l + pl * (pw + prefix));
        prefix += pl;
        std::size_t k = 0;
        for (int i = 0; i <= p; ++i)
          if (i != l) sub[k++] = t[static_cast<std::size_t>(i)];
        const auto lk = ctx.lookup(sub);
        if (!lk || !h.nonzero[lk->index]) continue;
        values[j] += (s * lk->factor) * ctx.act(t[static_cast<std::size_t>(l)], h.form.coeff(lk->index));
      }
      for (int l = 0; l <= p; ++l)
        for (int l2 = l + 1; l2 <= p; ++l2) {
          int between = 0;
          for (int i = l + 1; i < l2; ++i) between += par(ctx.parity(t[static_cast<std::size_t>(i)]));
          const double s = sign_pow(l2 + par(ctx.parity(t[static_cast<std::size_t>(l2)])) * between);
          for (int cc = 0; cc < ctx.size(); ++cc) {
            const Complex coef = ctx.c(cc, t[static_cast<std::size_t>(l)], t[static_cast<std::size_t>(l2)]);
            if (coef == 0.0) continue;
            std::size_t k = 0;
            for (int i = 0; i <= p; ++i) {
              if (i == l2) continue;
              sub[k++] = i == l ? cc : t[static_cast<std::size_t>(i)];
            }
            accumulate(values[j], h, sub, s * coef);
          }
        }
    }
  }
  return form_from_values(ctxp, p + 1, std::move(values));
}

SuperForm exterior_d_recursive(const SuperForm& w) {
  const ContextPtr& ctxp = w.context();
  const auto& ctx = *ctxp;
  const int p = w.degree();
  const auto& g = ctx.gind(p + 1);
  std::vector<GradedMatrix> values(g.size(), GradedMatrix::zero(ctx.dims()));
  for (const auto& h : split(w)) {
    const int pw = par(h.parity);
    if (p == 0) {
      for (std::size_t j = 0; j < g.size(); ++j) {
        const int b = g[j][0];
        values[j] += sign_pow(pw * par(ctx.parity(b))) * ctx.act(b, h.form.coeff(0));
      }
      continue;
    }
    // i_b(d w) = (-1)^{|b||w|} L_b w - d(i_b w)
    std::vector<std::optional<SuperForm>> contracted(static_cast<std::size_t>(ctx.size()));
    for (std::size_t j = 0; j < g.size(); ++j) {
      const int b = g[j][0];
      auto& slot = contracted[static_cast<std::size_t>(b)];
      if (!slot) {
        SuperForm lw = lie_derivative(b, h.form);
        lw *= sign_pow(par(ctx.parity(b)) * pw);
        slot = lw - exterior_d_recursive(interior(b, h.form));
      }
      const IndexTuple tail(g[j].begin() + 1, g[j].end());
      values[j] += slot->value(tail);
    }
  }
  return form_from_values(ctxp, p + 1, std::move(values));
}

SuperForm lambda(ContextPtr ctx, int a) {
  if (a < 0 || a >= ctx->size()) throw std::out_of_range("lambda index out of range");
  SuperForm w(ctx, 1);
  w.set_coeff(*ctx->gind_index({a}), GradedMatrix::identity(ctx->dims()));
  return w;
}

SuperForm maurer_cartan(ContextPtr ctx) {
  SuperForm w(ctx, 1);
  for (int a = 0; a < ctx->size(); ++a) w.set_coeff(*ctx->gind_index({a}), ctx->generator(a));
  return w;
}

SuperForm random_superform(ContextPtr ctx, int p, std::mt19937_64& rng, std::optional<Parity> parity) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  SuperForm w(ctx, p);
  const auto n = static_cast<Eigen::Index>(ctx->dims().total());
  for (std::size_t i = 0; i < w.coeffs().size(); ++i) {
    Matrix m(n, n);
    for (Eigen::Index c = 0; c < n; ++c)
      for (Eigen::Index r = 0; r < n; ++r) m(r, c) = Complex(u(rng), u(rng));
    w.set_coeff(i, GradedMatrix(ctx->dims(), std::move(m)));
  }
  return parity ? w.part(*parity) : w;
}

SuperForm body_cochain_map(const SuperForm& w, const FuzzySuperSphere& super_sphere, const FuzzySphere& body_sphere,
                           ContextPtr body_ctx) {
  if (!body_ctx->all_even()) throw std::invalid_argument("body context must be purely even");
  if (!(body_ctx->dims() == body_sphere.dims())) throw DimensionError("body context does not act on the body sphere");
  const auto& sctx = *w.context();
  const int p = w.degree();
  SuperForm out(body_ctx, p);
  const auto& g = body_ctx->gind(p);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto idx = sctx.gind_index(g[i]);
    if (!idx) throw std::logic_error("body tuple missing from the super index set");
    out.set_coeff(i, body_map_fuzzy(w.coeff(*idx), super_sphere, body_sphere));
  }
  return out;
}

SuperForm eta_forms(const SuperForm& w, const FuzzySuperSphere& from, const FuzzySuperSphere& to, ContextPtr to_ctx) {
  if (from.q() > to.q()) throw std::invalid_argument("eta_forms: q_from must not exceed q_to");
  if (!(w.context()->dims() == from.dims()) || !(to_ctx->dims() == to.dims()))
    throw DimensionError("eta_forms: contexts do not match the truncation levels");
  if (to_ctx->size() != w.context()->size()) throw std::invalid_argument("eta_forms: generator counts differ");
  const int p = w.degree();
  SuperForm out(to_ctx, p);
  for (std::size_t i = 0; i < w.coeffs().size(); ++i)
    out.set_coeff(i, psi_q(eta(to.q(), from.q(), psi_q_inv(w.coeff(i), from)), to));
  return out;
}

}  // namespace fuzzsuper
