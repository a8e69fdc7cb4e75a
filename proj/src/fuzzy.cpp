#include "fuzzsuper/fuzzy.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "fuzzsuper/numeric.hpp"

namespace fuzzsuper {

bool HarmonicLabel::valid() const {
  if (j2 < 0 || (mu != 0 && mu != 1)) return false;
  const int l = l2();
  return l >= 0 && std::abs(m2) <= l && (l - m2) % 2 == 0;
}

std::vector<HarmonicLabel> multiplet_labels(int j2) {
  std::vector<HarmonicLabel> out;
  for (int mu = 0; mu <= 1; ++mu) {
    const int l2 = j2 - mu;
    if (l2 < 0) continue;
    for (int m2 = l2; m2 >= -l2; m2 -= 2) out.push_back({j2, mu, m2});
  }
  return out;
}

std::vector<HarmonicLabel> harmonic_labels(int q) {
  if (q < 0) throw std::invalid_argument("harmonic_labels: q must be non-negative");
  std::vector<HarmonicLabel> out;
  for (int j2 = 0; j2 <= 2 * q; ++j2)
    for (const auto& l : multiplet_labels(j2)) out.push_back(l);
  return out;
}

LabelCounts count_labels(int q) {
  LabelCounts c;
  for (const auto& l : harmonic_labels(q)) (l.parity() == Parity::Even ? c.even : c.odd) += 1;
  return c;
}

Complex FuzzyElement::operator[](const HarmonicLabel& l) const {
  auto it = coeffs.find(l);
  return it == coeffs.end() ? Complex{} : it->second;
}

int FuzzyElement::max_j2() const {
  int m = 0;
  for (const auto& [l, c] : coeffs)
    if (c != 0.0) m = std::max(m, l.j2);
  return m;
}

double FuzzyElement::max_abs_diff(const FuzzyElement& other) const {
  double r = 0.0;
  for (const auto& [l, c] : coeffs) r = std::max(r, std::abs(c - other[l]));
  for (const auto& [l, c] : other.coeffs)
    if (!coeffs.contains(l)) r = std::max(r, std::abs(c));
  return r;
}

double lowering_prefactor(const HarmonicLabel& label) {
  if (!label.valid()) throw std::invalid_argument("lowering_prefactor: invalid label");
  const int lpm = (label.l2() + label.m2) / 2;
  const int lmm = (label.l2() - label.m2) / 2;
  const long double lg = label.mu * std::log(4.0L) + log_factorial(lpm) -
                         log_factorial(label.j2) - log_factorial(lmm);
  return static_cast<double>(std::exp(0.5L * lg));
}

namespace {

GradedMatrix power(const GradedMatrix& a, int n) {
  GradedMatrix r = GradedMatrix::identity(a.dims());
  for (int i = 0; i < n; ++i) r = r * a;
  return r;
}

void require_q(int q) {
  if (q < 1) throw std::invalid_argument("q must be >= 1, got " + std::to_string(q));
}

}  // namespace

GradedMatrix nc_highest_weight(const Irrep& rep, int q, int j2) {
  if (j2 < 0 || j2 > 2 * q)
    throw std::invalid_argument("nc_highest_weight: need 0 <= j <= q (j2 = " + std::to_string(j2) + ")");
  if (j2 == 0) return GradedMatrix::identity(rep.dims());
  if (j2 % 2 == 0) {
    const int j = j2 / 2;
    const long double lg = j * std::log(2.0L) + log_double_factorial(2 * j - 1) + log_factorial(q - j) -
                           log_factorial(j) - log_factorial(q + j);
    return static_cast<double>(std::exp(0.5L * lg)) * power(rep.Jplus(), j);
  }
  // half-integer j: Gamma(q - j + 1/2) / Gamma(q + j + 3/2) = 1 / prod_{k=q-j+1/2}^{q+j+1/2} k
  const int lo = (2 * q - j2 + 1) / 2;
  const int hi = (2 * q + j2 + 1) / 2;
  long double lg = ((j2 + 7) / 2) * std::log(2.0L) + log_double_factorial(j2) - log_factorial((j2 - 1) / 2);
  for (int k = lo; k <= hi; ++k) lg -= std::log(static_cast<long double>(k));
  const double pref = static_cast<double>(std::exp(0.5L * lg)) / (q + 0.5);
  const GradedMatrix id = GradedMatrix::identity(rep.dims());
  const GradedMatrix core = (rep.J3() - 0.75 * id) * rep.J4() + rep.Jplus() * rep.J5();
  return pref * (power(rep.Jplus(), (j2 - 1) / 2) * core);
}

FuzzySuperSphere FuzzySuperSphere::build(int q, double rho, int max_j2) {
  require_q(q);
  if (!(rho > 0.0)) throw std::invalid_argument("radius must be positive");
  FuzzySuperSphere ctx;
  ctx.q_ = q;
  ctx.rho_ = rho;
  ctx.max_j2_ = (max_j2 < 0 || max_j2 > 2 * q) ? 2 * q : max_j2;
  ctx.rep_ = build_irrep(q, Parity::Odd);
  const GradedMatrix& jm = ctx.rep_.Jminus();
  const GradedMatrix& j5 = ctx.rep_.J5();
  for (int j2 = 0; j2 <= ctx.max_j2_; ++j2) {
    const GradedMatrix hw = nc_highest_weight(ctx.rep_, q, j2);
    for (int mu = 0; mu <= 1; ++mu) {
      const int l2 = j2 - mu;
      if (l2 < 0) continue;
      GradedMatrix cur = mu == 0 ? hw : graded_commutator(j5, Parity::Odd, hw);
      for (int m2 = l2; m2 >= -l2; m2 -= 2) {
        if (m2 != l2) cur = graded_commutator(jm, Parity::Even, cur);
        const HarmonicLabel label{j2, mu, m2};
        ctx.index_[label] = ctx.labels_.size();
        ctx.labels_.push_back(label);
        ctx.harmonics_.push_back(lowering_prefactor(label) * cur);
      }
    }
  }
  return ctx;
}

const GradedMatrix& FuzzySuperSphere::harmonic(const HarmonicLabel& label) const {
  return harmonics_[index_of(label)];
}

std::size_t FuzzySuperSphere::index_of(const HarmonicLabel& label) const {
  auto it = index_.find(label);
  if (it == index_.end())
    throw std::out_of_range("harmonic label (j2=" + std::to_string(label.j2) + ", mu=" +
                            std::to_string(label.mu) + ", m2=" + std::to_string(label.m2) +
                            ") not in table for q=" + std::to_string(q_));
  return it->second;
}

GradedMatrix FuzzySuperSphere::adjoint_action(int a, const GradedMatrix& f) const {
  const Parity pa = a >= kJ4 ? Parity::Odd : Parity::Even;
  return graded_commutator(rep_.generator(a), pa, f);
}

GradedMatrix nc_harmonic(const FuzzySuperSphere& ctx, const HarmonicLabel& label) {
  if (!label.valid()) throw std::invalid_argument("nc_harmonic: invalid label");
  if (ctx.has(label)) return ctx.harmonic(label);
  GradedMatrix cur = nc_highest_weight(ctx.rep(), ctx.q(), label.j2);
  if (label.mu == 1) cur = graded_commutator(ctx.rep().J5(), Parity::Odd, cur);
  for (int k = 0; k < (label.l2() - label.m2) / 2; ++k)
    cur = graded_commutator(ctx.rep().Jminus(), Parity::Even, cur);
  return lowering_prefactor(label) * cur;
}

GradedMatrix psi_q(const FuzzyElement& e, const FuzzySuperSphere& ctx) {
  if (e.q > ctx.q()) throw std::invalid_argument("psi_q: element lives above the context's q");
  GradedMatrix r = GradedMatrix::zero(ctx.dims());
  for (const auto& [l, c] : e.coeffs)
    if (c != 0.0) r += c * ctx.harmonic(l);
  return r;
}

FuzzyElement psi_q_inv(const GradedMatrix& f, const FuzzySuperSphere& ctx) {
  FuzzyElement e;
  e.q = ctx.q();
  for (std::size_t i = 0; i < ctx.labels().size(); ++i) {
    const auto& l = ctx.labels()[i];
    e.coeffs[l] = static_cast<double>(l.pseudo_norm()) * indefinite_inner(ctx.harmonics()[i], f);
  }
  return e;
}

FuzzyElement eta(int q_to, int q_from, const FuzzyElement& e) {
  if (q_from > q_to) throw std::invalid_argument("eta: q_from must not exceed q_to");
  if (e.max_j2() > 2 * q_from) throw std::invalid_argument("eta: element has labels above q_from");
  FuzzyElement r = e;
  r.q = q_to;
  return r;
}

FuzzyElement fuzzy_product(const FuzzyElement& e1, const FuzzyElement& e2, const FuzzySuperSphere& ctx) {
  if (e1.max_j2() > 2 * ctx.q() || e2.max_j2() > 2 * ctx.q())
    throw std::invalid_argument("fuzzy_product: labels exceed q");
  return psi_q_inv(psi_q(e1, ctx) * psi_q(e2, ctx), ctx);
}

FuzzyElement apply_generator(int a, const FuzzyElement& e) {
  FuzzyElement r;
  r.q = e.q;
  auto add = [&](int which, const HarmonicLabel& l, Complex scale) {
    for (const auto& t : ladder_action(which, l.j2, l.l2(), l.m2))
      r.coeffs[{l.j2, t.mu, t.m2}] += scale * t.coeff;
  };
  for (const auto& [l, c] : e.coeffs) {
    if (c == 0.0) continue;
    switch (a) {
      case kJ1:
        add(kJplus, l, 0.5 * c);
        add(kJminus, l, 0.5 * c);
        break;
      case kJ2:
        add(kJplus, l, Complex(0.0, -0.5) * c);
        add(kJminus, l, Complex(0.0, 0.5) * c);
        break;
      case kJ3:
      case kJ4:
      case kJ5:
        add(a, l, c);
        break;
      default:
        throw std::out_of_range("osp generator index must be 0..4");
    }
  }
  return r;
}

StructureConstant structure_constant_fuzzy(int q, int j1_2, int j2_2) {
  require_q(q);
  if (j1_2 < 0 || j2_2 < 0 || j1_2 + j2_2 > 2 * q)
    throw std::invalid_argument("structure_constant_fuzzy: need j1 + j2 <= q");
  const Irrep rep = build_irrep(q, Parity::Odd);
  const GradedMatrix y1 = nc_highest_weight(rep, q, j1_2);
  const GradedMatrix y2 = nc_highest_weight(rep, q, j2_2);
  const GradedMatrix y12 = nc_highest_weight(rep, q, j1_2 + j2_2);
  const GradedMatrix prod = y1 * y2;
  const Complex c = indefinite_inner(y12, prod);
  StructureConstant out;
  out.value = c.real();
  out.residual = std::max((prod - c * y12).max_abs(), std::abs(c.imag()));
  return out;
}

SuperCoordinates coordinates(const FuzzySuperSphere& ctx) {
  const double s = 2.0 * ctx.rho() / std::sqrt(static_cast<double>(ctx.q()) * (ctx.q() + 1));
  const auto g = ctx.rep().generators();
  return {{s * g[0], s * g[1], s * g[2]}, {s * g[3], s * g[4]}};
}

double supersphere_relation_residual(const FuzzySuperSphere& ctx) {
  const auto c = coordinates(ctx);
  GradedMatrix sum = c.x[0] * c.x[0] + c.x[1] * c.x[1] + c.x[2] * c.x[2] + c.theta[0] * c.theta[1] -
                     c.theta[1] * c.theta[0];
  sum -= (ctx.rho() * ctx.rho()) * GradedMatrix::identity(ctx.dims());
  return sum.max_abs();
}

double adjoint_grade_star_residual(const FuzzySuperSphere& ctx, int lambda) {
  const auto gens = ctx.rep().generators();
  double r = 0.0;
  for (int a = 0; a < kOspDim; ++a) {
    const Parity pa = a >= kJ4 ? Parity::Odd : Parity::Even;
    const OspVector adj = grade_adjoint(a, lambda);
    GradedMatrix ja = GradedMatrix::zero(ctx.dims());
    for (int b = 0; b < kOspDim; ++b)
      if (adj[static_cast<std::size_t>(b)] != 0.0) ja += adj[static_cast<std::size_t>(b)] * gens[static_cast<std::size_t>(b)];
    for (std::size_t i = 0; i < ctx.harmonics().size(); ++i) {
      const GradedMatrix& f = ctx.harmonics()[i];
      const double s = sign_of(pa, ctx.labels()[i].parity());
      const GradedMatrix af = graded_commutator(ja, pa, f);
      for (const auto& g : ctx.harmonics()) {
        const Complex lhs = indefinite_inner(f, ctx.adjoint_action(a, g));
        r = std::max(r, std::abs(lhs - s * indefinite_inner(af, g)));
      }
    }
  }
  return r;
}

// ---------------------------------------------------------------------------

FuzzySphere FuzzySphere::build(int q, double rho) {
  require_q(q);
  if (!(rho > 0.0)) throw std::invalid_argument("radius must be positive");
  FuzzySphere ctx;
  ctx.q_ = q;
  ctx.rho_ = rho;
  ctx.rep_ = build_sl2_irrep(q);
  const GradedMatrix& jm = ctx.rep_.Jminus();
  for (int j = 0; j <= q; ++j) {
    const long double lg = j * std::log(2.0L) + log_double_factorial(2 * j + 1) +
                           std::log(static_cast<long double>(q + 1)) + log_factorial(q - j) -
                           log_factorial(j) - log_factorial(q + j + 1);
    GradedMatrix cur = static_cast<double>(std::exp(0.5L * lg)) * power(ctx.rep_.Jplus(), j);
    for (int m = j; m >= -j; --m) {
      if (m != j) cur = graded_commutator(jm, Parity::Even, cur);
      const long double ln = log_factorial(j + m) - log_factorial(2 * j) - log_factorial(j - m);
      const SphereLabel label{j, m};
      ctx.index_[label] = ctx.labels_.size();
      ctx.labels_.push_back(label);
      ctx.harmonics_.push_back(static_cast<double>(std::exp(0.5L * ln)) * cur);
    }
  }
  return ctx;
}

const GradedMatrix& FuzzySphere::harmonic(const SphereLabel& label) const {
  return harmonics_[index_of(label)];
}

std::size_t FuzzySphere::index_of(const SphereLabel& label) const {
  auto it = index_.find(label);
  if (it == index_.end())
    throw std::out_of_range("spherical harmonic (" + std::to_string(label.j) + ", " +
                            std::to_string(label.m) + ") not in table for q=" + std::to_string(q_));
  return it->second;
}

GradedMatrix FuzzySphere::adjoint_action(int k, const GradedMatrix& f) const {
  return graded_commutator(rep_.generator(k), Parity::Even, f);
}

GradedMatrix nc_spherical_harmonic(const FuzzySphere& ctx, int j, int m) {
  if (j < 0 || j > ctx.q() || std::abs(m) > j)
    throw std::invalid_argument("nc_spherical_harmonic: need 0 <= j <= q and |m| <= j");
  return ctx.harmonic({j, m});
}

std::array<GradedMatrix, 3> sphere_coordinates(const FuzzySphere& ctx) {
  const double s = 2.0 * ctx.rho() / std::sqrt(static_cast<double>(ctx.q()) * (ctx.q() + 2));
  const auto& r = ctx.rep();
  return {s * r.J1(), s * r.J2(), s * r.J3()};
}

double sphere_relation_residual(const FuzzySphere& ctx) {
  const auto x = sphere_coordinates(ctx);
  GradedMatrix sum = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
  sum -= (ctx.rho() * ctx.rho()) * GradedMatrix::identity(ctx.dims());
  return sum.max_abs();
}

std::optional<std::pair<SphereLabel, double>> body_image(const HarmonicLabel& label) {
  if (label.parity() == Parity::Odd) return std::nullopt;
  const int l = label.l2() / 2;
  const double sign = label.mu == 0 ? 1.0 : -1.0;
  return std::make_pair(SphereLabel{l, label.m2 / 2}, sign / std::sqrt(2.0 * l + 1.0));
}

GradedMatrix body_map_fuzzy(const GradedMatrix& f, const FuzzySuperSphere& super_ctx,
                            const FuzzySphere& body_ctx) {
  if (super_ctx.q() != body_ctx.q()) throw std::invalid_argument("body_map_fuzzy: q mismatch");
  const FuzzyElement e = psi_q_inv(f, super_ctx);
  GradedMatrix r = GradedMatrix::zero(body_ctx.dims());
  for (const auto& [label, c] : e.coeffs) {
    if (c == 0.0) continue;
    if (auto img = body_image(label)) r += (c * img->second) * body_ctx.harmonic(img->first);
  }
  return r;
}

}  // namespace fuzzsuper
