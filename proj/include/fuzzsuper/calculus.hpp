#pragma once

// Derivation-based differential calculus on a graded matrix algebra A = End(V):
// p-superforms are graded-alternating p-linear maps from a Lie superalgebra of
// inner derivations ad(E_A) into A, stored by their coefficients on the graded
// index set GInd_p.

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "fuzzsuper/fuzzy.hpp"
#include "fuzzsuper/graded.hpp"

namespace fuzzsuper {

/// Index tuple (A_1, ..., A_p), zero-based generator indices.
using IndexTuple = std::vector<int>;

inline constexpr int kMaxFormDegree = 12;

class DerivationContext {
 public:
  /// Generators E_A with parities and structure constants [E_b, E_c} = sum_a c(a,b,c) E_a.
  /// Even generators must precede odd ones.
  DerivationContext(GradedDims dims, std::vector<GradedMatrix> generators, std::vector<Parity> parities,
                    std::vector<Complex> structure_constants);

  /// osp(1|2) acting on End(V(j, hw_parity)) by ad.
  static std::shared_ptr<const DerivationContext> from_super(const Irrep& rep);
  /// sl(2) acting on End(V(s)) by ad.
  static std::shared_ptr<const DerivationContext> from_body(const Sl2Irrep& rep);

  /// New basis E'_a = sum_b M(b, a) E_b; M must be invertible and parity preserving.
  std::shared_ptr<const DerivationContext> transformed(const Matrix& m) const;

  int size() const { return static_cast<int>(generators_.size()); }
  Parity parity(int a) const { return parities_[static_cast<std::size_t>(a)]; }
  const std::vector<Parity>& parities() const { return parities_; }
  const GradedMatrix& generator(int a) const { return generators_[static_cast<std::size_t>(a)]; }
  const GradedDims& dims() const { return dims_; }
  /// Dimension of the algebra End(V).
  std::size_t algebra_dim() const { return dims_.total() * dims_.total(); }
  Complex c(int a, int b, int cc) const {
    const auto n = static_cast<std::size_t>(size());
    return c_[(static_cast<std::size_t>(a) * n + static_cast<std::size_t>(b)) * n + static_cast<std::size_t>(cc)];
  }
  bool all_even() const { return n_even_ == size(); }

  /// D_a(X) = [E_a, X}.
  GradedMatrix act(int a, const GradedMatrix& x) const;

  /// max-abs of [ad E_b, ad E_c} - sum_a c(a,b,c) ad E_a applied to the matrix units.
  double closure_residual() const;
  /// Dimension of the common graded kernel of all D_a (1 for a faithful irreducible action).
  std::size_t center_dimension(double tol = kDefaultRankTol) const;

  /// GInd_p in canonical order, 0 <= p <= kMaxFormDegree.
  const std::vector<IndexTuple>& gind(int p) const;
  std::size_t gind_size(int p) const { return gind(p).size(); }
  std::optional<std::size_t> gind_index(const IndexTuple& t) const;

  /// omega(D_T) = factor * omega_I for canonical I; nullopt if the value vanishes identically.
  struct Lookup {
    std::size_t index;
    double factor;
  };
  std::optional<Lookup> lookup(std::span<const int> t) const;
  /// (-1)^{p''(p''-1)/2} prod N_A! for a canonical tuple.
  double canonical_factor(const IndexTuple& t) const;
  /// Number of odd entries in t.
  int odd_count(std::span<const int> t) const;
  Parity tuple_parity(std::span<const int> t) const { return parity_of(odd_count(t)); }

 private:
  GradedDims dims_;
  std::vector<GradedMatrix> generators_;
  std::vector<Parity> parities_;
  std::vector<Complex> c_;
  int n_even_ = 0;
  std::vector<std::vector<IndexTuple>> gind_;
  std::vector<std::map<IndexTuple, std::size_t>> gind_index_;
};

/// Matrix of a linear map on End(V) acting on column-major vectorized matrices.
Matrix superoperator_matrix(GradedDims dims, const std::function<GradedMatrix(const GradedMatrix&)>& op);
Vector vectorize(const GradedMatrix& m);
GradedMatrix unvectorize(GradedDims dims, const Eigen::Ref<const Vector>& v);

/// D_p = sum_{p'=0}^{min(n_even,p)} C(n_even, p') * (number of odd multisets of size p - p').
std::size_t gind_count(int n_even, int n_odd, int p);

using ContextPtr = std::shared_ptr<const DerivationContext>;

class SuperForm {
 public:
  SuperForm(ContextPtr ctx, int p);
  static SuperForm from_coefficients(ContextPtr ctx, int p, std::vector<GradedMatrix> coeffs);
  static SuperForm zero_form(ContextPtr ctx, const GradedMatrix& f);

  int degree() const { return p_; }
  const ContextPtr& context() const { return ctx_; }
  const std::vector<GradedMatrix>& coeffs() const { return coeffs_; }
  const GradedMatrix& coeff(std::size_t i) const { return coeffs_[i]; }
  GradedMatrix coeff(const IndexTuple& t) const;
  void set_coeff(std::size_t i, GradedMatrix m);

  /// omega(D_{t_1}, ..., D_{t_p}) for basis derivations.
  GradedMatrix value(std::span<const int> t) const;

  /// Homogeneous component: coefficient at I contributes its part of parity p + p''(I).
  SuperForm part(Parity parity) const;
  std::optional<Parity> parity(double tol = 1e-12) const;
  double max_abs() const;

  SuperForm& operator+=(const SuperForm& o);
  SuperForm& operator-=(const SuperForm& o);
  SuperForm& operator*=(Complex s);
  friend SuperForm operator+(SuperForm a, const SuperForm& b) { return a += b; }
  friend SuperForm operator-(SuperForm a, const SuperForm& b) { return a -= b; }
  friend SuperForm operator*(Complex s, SuperForm a) { return a *= s; }

 private:
  ContextPtr ctx_;
  int p_ = 0;
  std::vector<GradedMatrix> coeffs_;
};

/// Builds a form from its values on the canonical tuples.
SuperForm form_from_values(ContextPtr ctx, int p, std::vector<GradedMatrix> values);

/// Multilinear evaluation on derivations given as coefficient vectors over the basis
/// (each argument must be homogeneous).
GradedMatrix eval_superform(const SuperForm& w, const std::vector<std::vector<Complex>>& derivations);

SuperForm wedge(const SuperForm& w1, const SuperForm& w2);
SuperForm lie_derivative(int a, const SuperForm& w);
SuperForm interior(int a, const SuperForm& w);
SuperForm exterior_d(const SuperForm& w);
/// Exterior derivative through the inductive definition via interior products.
SuperForm exterior_d_recursive(const SuperForm& w);

/// lambda^a: lambda^a(D_b) = delta_ab Id.
SuperForm lambda(ContextPtr ctx, int a);
/// sum_A E_A wedge lambda^A.
SuperForm maurer_cartan(ContextPtr ctx);

/// Random form with entries uniform in [-1,1] + i[-1,1]; homogeneous if parity is given.
SuperForm random_superform(ContextPtr ctx, int p, std::mt19937_64& rng, std::optional<Parity> parity = {});

/// Body map of forms: keeps the all-even index tuples and applies the noncommutative
/// body map to their coefficients.
SuperForm body_cochain_map(const SuperForm& w, const FuzzySuperSphere& super_sphere, const FuzzySphere& body_sphere,
                           ContextPtr body_ctx);

/// Coefficient-wise embedding between truncation levels.
SuperForm eta_forms(const SuperForm& w, const FuzzySuperSphere& from, const FuzzySuperSphere& to, ContextPtr to_ctx);

}  // namespace fuzzsuper
