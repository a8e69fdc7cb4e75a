#pragma once

// The orthosymplectic Lie superalgebra osp(1|2), its even part sl(2), and their
// finite-dimensional irreducible representations in ladder form.
//
// Generators are indexed 0..4 for J1, J2, J3 (even) and J4, J5 (odd).
// Spins are passed doubled (j2 = 2j) so half-integers stay exact.

#include <array>
#include <vector>

#include "fuzzsuper/graded.hpp"

namespace fuzzsuper {

inline constexpr int kOspDim = 5;
inline constexpr int kSl2Dim = 3;
inline constexpr int kJ1 = 0, kJ2 = 1, kJ3 = 2, kJ4 = 3, kJ5 = 4;

/// Coefficient vector over the generators, indexed like the generators.
using OspVector = std::array<Complex, kOspDim>;

struct OspBasis {
  std::array<Parity, kOspDim> parity{};
  /// c[a][b][c]: [J_b, J_c} = sum_a c[a][b][c] J_a.
  std::array<std::array<std::array<Complex, kOspDim>, kOspDim>, kOspDim> c{};

  OspVector bracket(int b, int c) const;
  OspVector bracket(const OspVector& x, const OspVector& y) const;
};

/// Pauli matrices sigma_1..3 (index 0..2); spinor row 0 <-> J4, row 1 <-> J5.
const std::array<Eigen::Matrix2cd, 3>& pauli();
double levi_civita(int i, int j, int k);

OspBasis build_osp_basis();

/// Structure constants of sl(2) in the basis J1, J2, J3, in an OspBasis-shaped
/// container (indices 3, 4 unused and zero).
OspBasis build_sl2_basis();

/// Max |residual| of the graded Jacobi identity over all basis triples.
double graded_jacobi_residual(const OspBasis& basis);

/// Max |residual| of graded antisymmetry [x,y} = -(-1)^{|x||y|}[y,x}.
double graded_antisymmetry_residual(const OspBasis& basis);

/// One term of a ladder action: coefficient times the basis vector (l2, m2, mu).
struct LadderTerm {
  int l2;
  int m2;
  int mu;
  double coeff;
};

/// Action of generator J3, J+, J-, J4 or J5 on the basis vector e_{l,m} of the
/// superspin-j module (mu = 0 for l = j, mu = 1 for l = j - 1/2), read off the
/// ladder formulas. `which` is kJ3, kJ4, kJ5, or kJplus / kJminus below.
inline constexpr int kJplus = 10, kJminus = 11;
std::vector<LadderTerm> ladder_action(int which, int j2, int l2, int m2);

/// Irreducible graded osp(1|2) representation V(j, hw_parity).
///
/// Basis: the even block first, then the odd block; within a block m runs
/// downward from +l. The highest weight vector has parity hw_parity, so the
/// l = j block (mu = 0) carries hw_parity and the l = j - 1/2 block (mu = 1) the other.
class Irrep {
 public:
  int j2() const { return j2_; }
  double j() const { return 0.5 * j2_; }
  Parity hw_parity() const { return hw_parity_; }
  const GradedDims& dims() const { return dims_; }

  const GradedMatrix& J3() const { return j3_; }
  const GradedMatrix& Jplus() const { return jp_; }
  const GradedMatrix& Jminus() const { return jm_; }
  const GradedMatrix& J4() const { return j4_; }
  const GradedMatrix& J5() const { return j5_; }
  GradedMatrix J1() const;
  GradedMatrix J2() const;

  /// J_A for A = 0..4.
  GradedMatrix generator(int a) const;
  std::array<GradedMatrix, kOspDim> generators() const;

  /// Position of e_{l,m} (mu selects the block) in the basis ordering.
  std::size_t basis_index(int mu, int m2) const;

  friend Irrep build_irrep(int j2, Parity hw_parity);

 private:
  int j2_ = 0;
  Parity hw_parity_ = Parity::Odd;
  GradedDims dims_;
  GradedMatrix j3_, jp_, jm_, j4_, j5_;
};

Irrep build_irrep(int j2, Parity hw_parity);

/// Irreducible sl(2) representation of spin s = s2/2 on C^{s2+1}, basis m = s, s-1, ..., -s.
class Sl2Irrep {
 public:
  int s2() const { return s2_; }
  std::size_t dim() const { return static_cast<std::size_t>(s2_ + 1); }
  /// As a purely even graded space (dims (s2+1 | 0)).
  GradedDims dims() const { return {dim(), 0}; }

  const GradedMatrix& J3() const { return j3_; }
  const GradedMatrix& Jplus() const { return jp_; }
  const GradedMatrix& Jminus() const { return jm_; }
  GradedMatrix J1() const;
  GradedMatrix J2() const;
  GradedMatrix generator(int k) const;

  friend Sl2Irrep build_sl2_irrep(int s2);

 private:
  int s2_ = 0;
  GradedMatrix j3_, jp_, jm_;
};

Sl2Irrep build_sl2_irrep(int s2);

/// sum_k J_k^2 + J4 J5 - J5 J4 in the representation.
GradedMatrix osp_casimir(const Irrep& rep);

/// Max residual of J_i^ - J_i, J4^ - (-1)^lambda J5, J5^ - (-1)^{lambda+1} J4.
double verify_grade_star(const Irrep& rep, int lambda);

/// Image of a generator under the grade adjoint operation ddagger_lambda as a
/// coefficient vector: J_i -> J_i, J4 -> (-1)^lambda J5, J5 -> (-1)^{lambda+1} J4.
OspVector grade_adjoint(int a, int lambda);

/// Max residual of [rep(A), rep(B)} - sum_C c^C_{AB} rep(C) over all pairs.
double representation_residual(const Irrep& rep, const OspBasis& basis);

}  // namespace fuzzsuper
