#pragma once

// Z2-graded linear algebra on finite-dimensional super vector spaces.
//
// Basis convention: every graded space stores its even basis vectors first,
// followed by the odd ones. A GradedMatrix is an endomorphism of such a space.

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace fuzzsuper {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr Complex kI{0.0, 1.0};

enum class Parity : int { Even = 0, Odd = 1 };

constexpr Parity operator+(Parity a, Parity b) {
  return static_cast<Parity>(static_cast<int>(a) ^ static_cast<int>(b));
}
constexpr int to_int(Parity p) { return static_cast<int>(p); }
constexpr Parity parity_of(int n) { return (n % 2 == 0) ? Parity::Even : Parity::Odd; }

/// (-1)^{a b} for two parities.
constexpr double sign_of(Parity a, Parity b) {
  return (a == Parity::Odd && b == Parity::Odd) ? -1.0 : 1.0;
}

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct GradedDims {
  std::size_t even = 0;
  std::size_t odd = 0;

  GradedDims() = default;
  GradedDims(std::size_t even_dim, std::size_t odd_dim);

  std::size_t total() const { return even + odd; }
  Parity parity_of_index(std::size_t i) const { return i < even ? Parity::Even : Parity::Odd; }
  bool operator==(const GradedDims&) const = default;
};

class GradedMatrix {
 public:
  GradedMatrix() = default;
  GradedMatrix(GradedDims dims, Matrix entries);

  static GradedMatrix zero(GradedDims dims);
  static GradedMatrix identity(GradedDims dims);
  /// Matrix unit E_{row,col}; homogeneous of parity |row| + |col|.
  static GradedMatrix unit(GradedDims dims, std::size_t row, std::size_t col);

  const GradedDims& dims() const { return dims_; }
  const Matrix& matrix() const { return m_; }
  Matrix& matrix() { return m_; }
  std::size_t size() const { return dims_.total(); }

  GradedMatrix even_part() const;
  GradedMatrix odd_part() const;
  GradedMatrix part(Parity p) const { return p == Parity::Even ? even_part() : odd_part(); }

  /// Parity if the matrix is homogeneous up to `tol` (max-abs), nullopt if mixed.
  /// The zero matrix reports Even.
  std::optional<Parity> parity(double tol = 1e-12) const;

  double max_abs() const;

  GradedMatrix& operator+=(const GradedMatrix& o);
  GradedMatrix& operator-=(const GradedMatrix& o);
  GradedMatrix& operator*=(Complex s);

  friend GradedMatrix operator+(GradedMatrix a, const GradedMatrix& b) { return a += b; }
  friend GradedMatrix operator-(GradedMatrix a, const GradedMatrix& b) { return a -= b; }
  friend GradedMatrix operator*(GradedMatrix a, Complex s) { return a *= s; }
  friend GradedMatrix operator*(Complex s, GradedMatrix a) { return a *= s; }
  friend GradedMatrix operator*(double s, GradedMatrix a) { return a *= Complex(s); }
  friend GradedMatrix operator*(const GradedMatrix& a, const GradedMatrix& b);

 private:
  GradedDims dims_;
  Matrix m_;
};

void require_same_dims(const GradedMatrix& a, const GradedMatrix& b, const char* what);

/// trace(even-even block) - trace(odd-odd block).
Complex supertrace(const GradedMatrix& m);

/// Superadjoint with respect to the graded Hilbert structure in which the standard
/// basis is orthonormal: <f^ v, w> = (-1)^{|f||v|} <v, f w>.
/// Even part -> conjugate transpose; odd part [[0,B],[C,0]] -> [[0,-C^*],[B^*,0]].
GradedMatrix superadjoint(const GradedMatrix& m);

/// Indefinite sesquilinear form  <f|g> = -Str(f^ g), antilinear in f.
Complex indefinite_inner(const GradedMatrix& f, const GradedMatrix& g);

/// Hilbert-Schmidt form trace(f^* g) / n on an ungraded n x n algebra.
Complex hs_inner(const GradedMatrix& f, const GradedMatrix& g);

/// Graded commutator AB - (-1)^{|A||B|} BA, extended bilinearly over the
/// homogeneous parts of both arguments.
GradedMatrix graded_commutator(const GradedMatrix& a, const GradedMatrix& b);

/// Graded commutator where `a` is known to be homogeneous of parity `pa`.
GradedMatrix graded_commutator(const GradedMatrix& a, Parity pa, const GradedMatrix& b);

// ---------------------------------------------------------------------------
// Permutations and the commutation factor of graded-alternating maps.
//
// A permutation of p letters is stored zero-based: sigma[i] = sigma(i+1) - 1.

using Permutation = std::vector<int>;

bool is_permutation(std::span<const int> sigma);
Permutation inverse(std::span<const int> sigma);
/// (sigma o tau)(i) = sigma(tau(i)).
Permutation compose(std::span<const int> sigma, std::span<const int> tau);
int permutation_sign(std::span<const int> sigma);
std::vector<Permutation> all_permutations(int p);

/// gamma_p(sigma; i_1..i_p): product over pairs r < s with
/// sigma^{-1}(r) > sigma^{-1}(s) of (-1)^{i_r i_s}.
int commutation_factor(std::span<const int> sigma, std::span<const Parity> parities);

// ---------------------------------------------------------------------------
// Numerical rank.

inline constexpr double kDefaultRankTol = 1e-8;

struct RankReport {
  std::size_t rank = 0;
  double scale = 1.0;            // max(largest singular value, 1)
  double smallest_kept = 0.0;    // relative to scale; 0 if rank == 0
  double largest_dropped = 0.0;  // relative to scale; 0 if full rank
  /// Distance of the decision from the threshold, as a factor:
  /// min(smallest_kept / tol, tol / largest_dropped). Infinite when both sides are empty.
  double margin = 0.0;
};

/// Number of singular values > tol * max(sigma_max, 1).
std::size_t numerical_rank(const Matrix& m, double tol = kDefaultRankTol);
RankReport rank_report(const Matrix& m, double tol = kDefaultRankTol);

}  // namespace fuzzsuper
