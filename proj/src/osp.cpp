#include "fuzzsuper/osp.hpp"

#include <cmath>
#include <stdexcept>

namespace fuzzsuper {

const std::array<Eigen::Matrix2cd, 3>& pauli() {
  static const std::array<Eigen::Matrix2cd, 3> s = [] {
    std::array<Eigen::Matrix2cd, 3> r;
    r[0] << 0, 1, 1, 0;
    r[1] << 0, -kI, kI, 0;
    r[2] << 1, 0, 0, -1;
    return r;
  }();
  return s;
}

double levi_civita(int i, int j, int k) {
  if (i == j || j == k || i == k) return 0.0;
  // even permutations of (0,1,2) are cyclic shifts
  return ((j - i + 3) % 3 == 1) ? 1.0 : -1.0;
}

OspVector OspBasis::bracket(int b, int cc) const {
  OspVector r{};
  for (int a = 0; a < kOspDim; ++a) r[a] = c[a][b][cc];
  return r;
}

OspVector OspBasis::bracket(const OspVector& x, const OspVector& y) const {
  OspVector r{};
  for (int b = 0; b < kOspDim; ++b)
    for (int cc = 0; cc < kOspDim; ++cc) {
      if (x[b] == 0.0 || y[cc] == 0.0) continue;
      for (int a = 0; a < kOspDim; ++a) r[a] += x[b] * y[cc] * c[a][b][cc];
    }
  return r;
}

OspBasis build_osp_basis() {
  OspBasis basis;
  basis.parity = {Parity::Even, Parity::Even, Parity::Even, Parity::Odd, Parity::Odd};
  const auto& s = pauli();
  // [J_i, J_j] = i eps_ijk J_k
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) basis.c[k][i][j] += kI * levi_civita(i, j, k);
  // [J_i, J_alpha] = 1/2 sum_beta (sigma_i)_{beta alpha} J_beta, and the mirrored bracket
  for (int i = 0; i < 3; ++i)
    for (int al = 0; al < 2; ++al)
      for (int be = 0; be < 2; ++be) {
        const Complex v = 0.5 * s[static_cast<std::size_t>(i)](be, al);
        basis.c[3 + be][i][3 + al] += v;
        basis.c[3 + be][3 + al][i] -= v;
      }
  // [J_alpha, J_beta] = 1/2 sum_i (i sigma_2 sigma_i)_{alpha beta} J_i
  for (int al = 0; al < 2; ++al)
    for (int be = 0; be < 2; ++be)
      for (int i = 0; i < 3; ++i) {
        const Eigen::Matrix2cd m = kI * s[1] * s[static_cast<std::size_t>(i)];
        basis.c[i][3 + al][3 + be] += 0.5 * m(al, be);
      }
  return basis;
}

OspBasis build_sl2_basis() {
  OspBasis basis;
  basis.parity = {Parity::Even, Parity::Even, Parity::Even, Parity::Even, Parity::Even};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) basis.c[k][i][j] += kI * levi_civita(i, j, k);
  return basis;
}

double graded_antisymmetry_residual(const OspBasis& basis) {
  double r = 0.0;
  for (int a = 0; a < kOspDim; ++a)
    for (int b = 0; b < kOspDim; ++b)
      for (int cc = 0; cc < kOspDim; ++cc) {
        const double s = sign_of(basis.parity[b], basis.parity[cc]);
        r = std::max(r, std::abs(basis.c[a][b][cc] + s * basis.c[a][cc][b]));
      }
  return r;
}

double graded_jacobi_residual(const OspBasis& basis) {
  // (-1)^{|x||z|}[x,[y,z}} + cyclic = 0
  double r = 0.0;
  auto unit = [](int a) {
    OspVector v{};
    v[a] = 1.0;
    return v;
  };
  for (int x = 0; x < kOspDim; ++x)
    for (int y = 0; y < kOspDim; ++y)
      for (int z = 0; z < kOspDim; ++z) {
        const Parity px = basis.parity[x], py = basis.parity[y], pz = basis.parity[z];
        const OspVector t1 = basis.bracket(unit(x), basis.bracket(y, z));
        const OspVector t2 = basis.bracket(unit(y), basis.bracket(z, x));
        const OspVector t3 = basis.bracket(unit(z), basis.bracket(x, y));
        for (int a = 0; a < kOspDim; ++a) {
          const Complex sum = sign_of(px, pz) * t1[a] + sign_of(py, px) * t2[a] + sign_of(pz, py) * t3[a];
          r = std::max(r, std::abs(sum));
        }
      }
  return r;
}

std::vector<LadderTerm> ladder_action(int which, int j2, int l2, int m2) {
  const int mu = j2 - l2;
  if (mu != 0 && mu != 1) throw std::invalid_argument("ladder_action: l must be j or j - 1/2");
  if (l2 < 0 || std::abs(m2) > l2 || (l2 - m2) % 2 != 0)
    throw std::invalid_argument("ladder_action: invalid weight label");
  const double j = 0.5 * j2, l = 0.5 * l2, m = 0.5 * m2;
  std::vector<LadderTerm> out;
  auto push = [&](int tl2, int tm2, double coeff) {
    if (coeff == 0.0 || tl2 < 0 || std::abs(tm2) > tl2) return;
    out.push_back({tl2, tm2, j2 - tl2, coeff});
  };
  switch (which) {
    case kJ3:
      push(l2, m2, m);
      break;
    case kJplus:
      push(l2, m2 + 2, std::sqrt((l - m) * (l + m + 1)));
      break;
    case kJminus:
      push(l2, m2 - 2, std::sqrt((l + m) * (l - m + 1)));
      break;
    case kJ4:
      if (mu == 0)
        push(j2 - 1, m2 + 1, -0.5 * std::sqrt(j - m));
      else
        push(j2, m2 + 1, -0.5 * std::sqrt(j + m + 0.5));
      break;
    case kJ5:
      if (mu == 0)
        push(j2 - 1, m2 - 1, 0.5 * std::sqrt(j + m));
      else
        push(j2, m2 - 1, -0.5 * std::sqrt(j - m + 0.5));
      break;
    default:
      throw std::invalid_argument("ladder_action: unsupported generator");
  }
  return out;
}

GradedMatrix Irrep::J1() const { return 0.5 * (jp_ + jm_); }
GradedMatrix Irrep::J2() const { return Complex(0.0, -0.5) * (jp_ - jm_); }

GradedMatrix Irrep::generator(int a) const {
  switch (a) {
    case kJ1: return J1();
    case kJ2: return J2();
    case kJ3: return j3_;
    case kJ4: return j4_;
    case kJ5: return j5_;
    default: throw std::out_of_range("osp generator index must be 0..4");
  }
}

std::array<GradedMatrix, kOspDim> Irrep::generators() const {
  return {J1(), J2(), j3_, j4_, j5_};
}

std::size_t Irrep::basis_index(int mu, int m2) const {
  const int l2 = j2_ - mu;
  if (mu < 0 || mu > 1 || l2 < 0 || std::abs(m2) > l2 || (l2 - m2) % 2 != 0)
    throw std::out_of_range("Irrep::basis_index: no such basis vector");
  const Parity block_parity = mu == 0 ? hw_parity_ : hw_parity_ + Parity::Odd;
  const std::size_t offset = block_parity == Parity::Even ? 0 : dims_.even;
  return offset + static_cast<std::size_t>((l2 - m2) / 2);
}

Irrep build_irrep(int j2, Parity hw_parity) {
  if (j2 < 0) throw std::invalid_argument("build_irrep: superspin must be non-negative");
  Irrep rep;
  rep.j2_ = j2;
  rep.hw_parity_ = hw_parity;
  const std::size_t top = static_cast<std::size_t>(j2 + 1);  // l = j block
  const std::size_t low = static_cast<std::size_t>(j2);      // l = j - 1/2 block
  rep.dims_ = hw_parity == Parity::Even ? GradedDims{top, low} : GradedDims{low, top};

  const auto n = static_cast<Eigen::Index>(rep.dims_.total());
  Matrix j3 = Matrix::Zero(n, n), jp = j3, jm = j3, j4 = j3, j5 = j3;
  const std::array<std::pair<int, Matrix*>, 5> ops = {
      {{kJ3, &j3}, {kJplus, &jp}, {kJminus, &jm}, {kJ4, &j4}, {kJ5, &j5}}};
  for (int mu = 0; mu <= 1; ++mu) {
    const int l2 = j2 - mu;
    if (l2 < 0) continue;
    for (int m2 = l2; m2 >= -l2; m2 -= 2) {
      const auto col = static_cast<Eigen::Index>(rep.basis_index(mu, m2));
      for (const auto& [which, mat] : ops)
        for (const auto& t : ladder_action(which, j2, l2, m2))
          (*mat)(static_cast<Eigen::Index>(rep.basis_index(t.mu, t.m2)), col) += t.coeff;
    }
  }
  rep.j3_ = {rep.dims_, std::move(j3)};
  rep.jp_ = {rep.dims_, std::move(jp)};
  rep.jm_ = {rep.dims_, std::move(jm)};
  rep.j4_ = {rep.dims_, std::move(j4)};
  rep.j5_ = {rep.dims_, std::move(j5)};
  return rep;
}

GradedMatrix Sl2Irrep::J1() const { return 0.5 * (jp_ + jm_); }
GradedMatrix Sl2Irrep::J2() const { return Complex(0.0, -0.5) * (jp_ - jm_); }

GradedMatrix Sl2Irrep::generator(int k) const {
  switch (k) {
    case kJ1: return J1();
    case kJ2: return J2();
    case kJ3: return j3_;
    default: throw std::out_of_range("sl(2) generator index must be 0..2");
  }
}

Sl2Irrep build_sl2_irrep(int s2) {
  if (s2 < 0) throw std::invalid_argument("build_sl2_irrep: spin must be non-negative");
  Sl2Irrep rep;
  rep.s2_ = s2;
  const auto n = static_cast<Eigen::Index>(s2 + 1);
  Matrix j3 = Matrix::Zero(n, n), jp = j3, jm = j3;
  const double s = 0.5 * s2;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double m = s - static_cast<double>(i);
    j3(i, i) = m;
    if (i > 0) jp(i - 1, i) = std::sqrt((s - m) * (s + m + 1));
    if (i + 1 < n) jm(i + 1, i) = std::sqrt((s + m) * (s - m + 1));
  }
  const GradedDims dims = rep.dims();
  rep.j3_ = {dims, std::move(j3)};
  rep.jp_ = {dims, std::move(jp)};
  rep.jm_ = {dims, std::move(jm)};
  return rep;
}

GradedMatrix osp_casimir(const Irrep& rep) {
  const auto g = rep.generators();
  return g[0] * g[0] + g[1] * g[1] + g[2] * g[2] + g[3] * g[4] - g[4] * g[3];
}

OspVector grade_adjoint(int a, int lambda) {
  if (lambda != 0 && lambda != 1) throw std::invalid_argument("grade adjoint index must be 0 or 1");
  OspVector v{};
  const double s = lambda == 0 ? 1.0 : -1.0;
  switch (a) {
    case kJ4: v[kJ5] = s; break;
    case kJ5: v[kJ4] = -s; break;
    default: v[a] = 1.0; break;
  }
  return v;
}

double verify_grade_star(const Irrep& rep, int lambda) {
  const auto g = rep.generators();
  double r = 0.0;
  for (int a = 0; a < kOspDim; ++a) {
    const OspVector img = grade_adjoint(a, lambda);
    GradedMatrix target = GradedMatrix::zero(rep.dims());
    for (int b = 0; b < kOspDim; ++b)
      if (img[b] != 0.0) target += img[b] * g[b];
    r = std::max(r, (superadjoint(g[a]) - target).max_abs());
  }
  return r;
}

double representation_residual(const Irrep& rep, const OspBasis& basis) {
  const auto g = rep.generators();
  double r = 0.0;
  for (int a = 0; a < kOspDim; ++a)
    for (int b = 0; b < kOspDim; ++b) {
      GradedMatrix rhs = GradedMatrix::zero(rep.dims());
      for (int cc = 0; cc < kOspDim; ++cc)
        if (basis.c[cc][a][b] != 0.0) rhs += basis.c[cc][a][b] * g[cc];
      r = std::max(r, (graded_commutator(g[a], basis.parity[a], g[b]) - rhs).max_abs());
    }
  return r;
}

}  // namespace fuzzsuper
