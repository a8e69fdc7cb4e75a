#pragma once

// Truncated superspheres End(V(q/2, odd)) and truncated spheres End(V(q/2)):
// noncommutative (super)spherical harmonics, the psi_q / eta maps, fuzzy
// products, coordinates, and the noncommutative body map.

#include <array>
#include <compare>
#include <map>
#include <optional>
#include <vector>

#include "fuzzsuper/graded.hpp"
#include "fuzzsuper/osp.hpp"

namespace fuzzsuper {

/// (j, l, m, mu) label of a superspherical harmonic, with all half-integers doubled.
/// l = j - mu/2; the harmonic has parity 2j + mu (mod 2).
struct HarmonicLabel {
  int j2 = 0;
  int mu = 0;
  int m2 = 0;

  int l2() const { return j2 - mu; }
  Parity parity() const { return parity_of(j2 + mu); }
  bool valid() const;
  /// (-1)^{[2j odd][mu = 1]}: the pseudo-norm of the harmonic.
  int pseudo_norm() const { return (j2 % 2 == 1 && mu == 1) ? -1 : 1; }

  /// Ordered by j, then mu, then m descending.
  friend std::strong_ordering operator<=>(const HarmonicLabel& a, const HarmonicLabel& b) {
    if (auto c = a.j2 <=> b.j2; c != 0) return c;
    if (auto c = a.mu <=> b.mu; c != 0) return c;
    return b.m2 <=> a.m2;
  }
  friend bool operator==(const HarmonicLabel&, const HarmonicLabel&) = default;
};

/// All labels with j <= q, in label order. (2q+1)^2 of them.
std::vector<HarmonicLabel> harmonic_labels(int q);
/// Labels belonging to the superspin-j multiplet.
std::vector<HarmonicLabel> multiplet_labels(int j2);

struct LabelCounts {
  std::size_t even = 0;
  std::size_t odd = 0;
  std::size_t total() const { return even + odd; }
};
LabelCounts count_labels(int q);

/// Coefficients of an element of the truncated sum H_q in the superspherical harmonic basis.
struct FuzzyElement {
  int q = 1;
  std::map<HarmonicLabel, Complex> coeffs;

  Complex operator[](const HarmonicLabel& l) const;
  int max_j2() const;
  double max_abs_diff(const FuzzyElement& other) const;
};

/// sqrt(4^{2(j-l)} Gamma(l+m+1) / (Gamma(2j+1) Gamma(l-m+1))): lowering prefactor of a harmonic.
double lowering_prefactor(const HarmonicLabel& label);

/// Highest-weight noncommutative harmonic of superspin j2/2 inside End(V(q/2, odd)).
/// j = 0 gives the identity. Throws if j > q.
GradedMatrix nc_highest_weight(const Irrep& rep, int q, int j2);

class FuzzySuperSphere {
 public:
  /// Builds the irrep V(q/2, odd) and the harmonic table up to superspin max_j2/2
  /// (all j <= q when max_j2 < 0).
  static FuzzySuperSphere build(int q, double rho = 1.0, int max_j2 = -1);

  int q() const { return q_; }
  double rho() const { return rho_; }
  int max_j2() const { return max_j2_; }
  const Irrep& rep() const { return rep_; }
  const GradedDims& dims() const { return rep_.dims(); }
  const std::vector<HarmonicLabel>& labels() const { return labels_; }
  const std::vector<GradedMatrix>& harmonics() const { return harmonics_; }

  bool has(const HarmonicLabel& label) const { return index_.contains(label); }
  const GradedMatrix& harmonic(const HarmonicLabel& label) const;
  std::size_t index_of(const HarmonicLabel& label) const;

  /// ad(J_A)(f) = [J_A^{(q/2)}, f}.
  GradedMatrix adjoint_action(int a, const GradedMatrix& f) const;

 private:
  int q_ = 1;
  double rho_ = 1.0;
  int max_j2_ = 0;
  Irrep rep_;
  std::vector<HarmonicLabel> labels_;
  std::vector<GradedMatrix> harmonics_;
  std::map<HarmonicLabel, std::size_t> index_;
};

/// Noncommutative superspherical harmonic, built from the highest weight by the
/// lowering operators ad(J5)^mu then ad(J-)^{l-m}.
GradedMatrix nc_harmonic(const FuzzySuperSphere& ctx, const HarmonicLabel& label);

/// Linear extension of label -> harmonic.
GradedMatrix psi_q(const FuzzyElement& e, const FuzzySuperSphere& ctx);
/// Expansion via the signed dual basis: coeff(L) = pseudo_norm(L) <Y_L | f>.
FuzzyElement psi_q_inv(const GradedMatrix& f, const FuzzySuperSphere& ctx);

/// Embedding H_{q_from} -> H_{q_to}: identity on coefficients.
FuzzyElement eta(int q_to, int q_from, const FuzzyElement& e);

/// psi_q^{-1}(psi_q(e1) psi_q(e2)).
FuzzyElement fuzzy_product(const FuzzyElement& e1, const FuzzyElement& e2, const FuzzySuperSphere& ctx);

/// Action of J_A on coefficients, multiplet by multiplet, through the ladder formulas.
FuzzyElement apply_generator(int a, const FuzzyElement& e);

struct StructureConstant {
  double value = 0.0;
  /// max-abs of the part of the product not proportional to the target harmonic.
  double residual = 0.0;
};

/// c^q_{j1 j2}: Y_{j1} Y_{j2} = c^q Y_{j1+j2} for highest-weight harmonics of End(V(q/2, odd)).
StructureConstant structure_constant_fuzzy(int q, int j1_2, int j2_2);

struct SuperCoordinates {
  std::array<GradedMatrix, 3> x;
  std::array<GradedMatrix, 2> theta;
};

/// X_k = 2 rho / sqrt(q(q+1)) J_k, Theta_alpha likewise.
SuperCoordinates coordinates(const FuzzySuperSphere& ctx);

/// max-abs of sum X_k^2 + Theta4 Theta5 - Theta5 Theta4 - rho^2 Id.
double supersphere_relation_residual(const FuzzySuperSphere& ctx);

/// Max over harmonics f, g and generators A of
/// |<f|ad(J_A) g> - (-1)^{|A||f|} <ad(J_A^{ddagger_lambda}) f|g>|.
double adjoint_grade_star_residual(const FuzzySuperSphere& ctx, int lambda);

// ---------------------------------------------------------------------------
// Truncated sphere End(V(q/2)).

struct SphereLabel {
  int j = 0;
  int m = 0;
  friend std::strong_ordering operator<=>(const SphereLabel& a, const SphereLabel& b) {
    if (auto c = a.j <=> b.j; c != 0) return c;
    return b.m <=> a.m;
  }
  friend bool operator==(const SphereLabel&, const SphereLabel&) = default;
};

class FuzzySphere {
 public:
  static FuzzySphere build(int q, double rho = 1.0);

  int q() const { return q_; }
  double rho() const { return rho_; }
  const Sl2Irrep& rep() const { return rep_; }
  GradedDims dims() const { return rep_.dims(); }
  const std::vector<SphereLabel>& labels() const { return labels_; }
  const std::vector<GradedMatrix>& harmonics() const { return harmonics_; }
  const GradedMatrix& harmonic(const SphereLabel& label) const;
  std::size_t index_of(const SphereLabel& label) const;

  GradedMatrix adjoint_action(int k, const GradedMatrix& f) const;

 private:
  int q_ = 1;
  double rho_ = 1.0;
  Sl2Irrep rep_;
  std::vector<SphereLabel> labels_;
  std::vector<GradedMatrix> harmonics_;
  std::map<SphereLabel, std::size_t> index_;
};

/// Noncommutative spherical harmonic Y^{q/2}_{j,m} (orthonormal under hs_inner).
GradedMatrix nc_spherical_harmonic(const FuzzySphere& ctx, int j, int m);

/// X_k = 2 rho / sqrt(q(q+2)) J_k on V(q/2).
std::array<GradedMatrix, 3> sphere_coordinates(const FuzzySphere& ctx);
double sphere_relation_residual(const FuzzySphere& ctx);

/// Image of a superspherical harmonic under the body map: (-1)^mu / sqrt(2l+1) Y_{l,m}
/// for even-parity labels, nothing for odd ones.
std::optional<std::pair<SphereLabel, double>> body_image(const HarmonicLabel& label);

/// Noncommutative body map End(V(q/2, odd)) -> End(V(q/2)).
GradedMatrix body_map_fuzzy(const GradedMatrix& f, const FuzzySuperSphere& super_ctx,
                            const FuzzySphere& body_ctx);

}  // namespace fuzzsuper
