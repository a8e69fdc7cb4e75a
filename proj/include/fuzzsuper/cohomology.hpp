#pragma once

// Cohomology of the derivation complex: d assembled as plain matrices on the
// coefficient spaces, ranks by singular values, isotypic and center-valued
// restrictions, invariant forms and the compatibility of the body cochain map.

#include <functional>
#include <map>
#include <vector>

#include "fuzzsuper/calculus.hpp"

namespace fuzzsuper {

/// Flattened form: entry I * N + (r + c * n) holds coefficient I at (r, c), N = n * n.
Vector form_vector(const SuperForm& w);
SuperForm form_from_vector(ContextPtr ctx, int p, const Eigen::Ref<const Vector>& v);

/// Matrix of a linear map Omega^p -> Omega^p_out on flattened forms.
Matrix form_operator_matrix(const ContextPtr& ctx, int p, int p_out,
                            const std::function<SuperForm(const SuperForm&)>& op);

/// d_p : Omega^p -> Omega^{p+1}.
Matrix d_matrix(const ContextPtr& ctx, int p);
/// L_a on Omega^p.
Matrix lie_derivative_matrix(const ContextPtr& ctx, int a, int p);

struct DegreeReport {
  int p = 0;
  std::size_t form_dim = 0;  // dim of the (restricted) cochain space
  std::size_t rank_d = 0;    // rank of d_p
  RankReport rank_detail;    // singular-value diagnostics of d_p
  std::size_t betti = 0;
};

struct CohomologyReport {
  double tol = kDefaultRankTol;
  std::vector<DegreeReport> degrees;

  std::vector<std::size_t> betti() const;
  /// Smallest rank margin over all rank decisions.
  double min_margin() const;
};

/// Betti numbers of the full complex for p = 0..p_max.
CohomologyReport cohomology_dims(const ContextPtr& ctx, int p_max, double tol = kDefaultRankTol);

/// Betti numbers of the subcomplex W (x) Lambda for a d-stable coefficient subspace W.
/// basis: N x k matrix whose columns are vectorized elements spanning W (need not be orthonormal).
CohomologyReport restricted_cohomology(const ContextPtr& ctx, const Matrix& basis, int p_max,
                                       double tol = kDefaultRankTol);

/// Vectorized multiplets W_j of End(V), keyed by 2j.
std::map<int, Matrix> isotypic_bases(const FuzzySuperSphere& sphere);
std::map<int, Matrix> isotypic_bases(const FuzzySphere& sphere);

/// Dimension of the space of forms of degree p annihilated by every L_a.
std::size_t invariant_form_dimension(const ContextPtr& ctx, int p, double tol = kDefaultRankTol);

/// Representative of H^p of the center-valued complex, orthogonal to the exact forms
/// (throws if that cohomology is not one-dimensional).
SuperForm center_cohomology_generator(const ContextPtr& ctx, int p, double tol = kDefaultRankTol);

struct BodyCompatibility {
  int p = 3;
  double super_closed_residual = 0.0;  // |d w|
  double body_closed_residual = 0.0;   // |d beta(w)|
  double body_norm = 0.0;              // |beta(w)|
  double distance_to_exact = 0.0;      // relative distance of beta(w) from im d_{p-1}
  RankReport exactness_rank;           // rank of [d_{p-1} | beta(w)]
  bool non_exact = false;
};

/// Maps the degree-p center-valued cohomology generator of the super complex through the
/// body cochain map and checks that the image is closed and not exact.
BodyCompatibility body_cohomology_check(const ContextPtr& super_ctx, const FuzzySuperSphere& super_sphere,
                                        const ContextPtr& body_ctx, const FuzzySphere& body_sphere, int p = 3,
                                        double tol = kDefaultRankTol);

}  // namespace fuzzsuper
