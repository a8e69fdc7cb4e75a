#include "fuzzsuper/serialize.hpp"

#include <cmath>
#include <stdexcept>

namespace fuzzsuper {

namespace {

// JSON has no infinity; unbounded margins are written as null.
Json finite_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

}  // namespace

Json complex_to_json(Complex c) { return Json::array({c.real(), c.imag()}); }

Complex complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("complex number must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

Json label_to_json(const HarmonicLabel& l) { return Json::array({l.j2, l.l2(), l.m2, l.mu}); }

HarmonicLabel label_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 4) throw std::invalid_argument("label must be [j2, l2, m2, mu]");
  const HarmonicLabel l{j[0].get<int>(), j[3].get<int>(), j[2].get<int>()};
  if (l.l2() != j[1].get<int>() || !l.valid()) throw std::invalid_argument("inconsistent harmonic label");
  return l;
}

Json matrix_to_json(const GradedMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.matrix().rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.matrix().cols(); ++c) row.push_back(complex_to_json(m.matrix()(r, c)));
    rows.push_back(std::move(row));
  }
  return {{"even", m.dims().even}, {"odd", m.dims().odd}, {"entries", std::move(rows)}};
}

GradedMatrix matrix_from_json(const Json& j) {
  const GradedDims dims{j.at("even").get<std::size_t>(), j.at("odd").get<std::size_t>()};
  const auto n = static_cast<Eigen::Index>(dims.total());
  const Json& rows = j.at("entries");
  if (rows.size() != dims.total()) throw DimensionError("matrix row count does not match its dimensions");
  Matrix m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const Json& row = rows[static_cast<std::size_t>(r)];
    if (row.size() != dims.total()) throw DimensionError("matrix column count does not match its dimensions");
    for (Eigen::Index c = 0; c < n; ++c) m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)]);
  }
  return {dims, std::move(m)};
}

Json element_to_json(const FuzzyElement& e) {
  Json coeffs = Json::array();
  for (const auto& [l, c] : e.coeffs) coeffs.push_back({{"label", label_to_json(l)}, {"value", complex_to_json(c)}});
  return {{"q", e.q}, {"coefficients", std::move(coeffs)}};
}

FuzzyElement element_from_json(const Json& j) {
  FuzzyElement e;
  e.q = j.at("q").get<int>();
  for (const auto& entry : j.at("coefficients"))
    e.coeffs[label_from_json(entry.at("label"))] = complex_from_json(entry.at("value"));
  return e;
}

Json context_to_json(const FuzzySuperSphere& ctx, bool with_matrices) {
  Json table = Json::array();
  for (std::size_t i = 0; i < ctx.labels().size(); ++i) {
    const auto& l = ctx.labels()[i];
    Json entry = {{"label", label_to_json(l)},
                  {"parity", l.parity() == Parity::Even ? "even" : "odd"},
                  {"pseudo_norm", l.pseudo_norm()}};
    if (with_matrices) entry["matrix"] = matrix_to_json(ctx.harmonics()[i]);
    table.push_back(std::move(entry));
  }
  return {{"kind", "supersphere"}, {"q", ctx.q()}, {"rho", ctx.rho()},
          {"dims", {ctx.dims().even, ctx.dims().odd}}, {"harmonics", std::move(table)}};
}

Json context_to_json(const FuzzySphere& ctx, bool with_matrices) {
  Json table = Json::array();
  for (std::size_t i = 0; i < ctx.labels().size(); ++i) {
    const auto& l = ctx.labels()[i];
    Json entry = {{"label", {l.j, l.m}}};
    if (with_matrices) entry["matrix"] = matrix_to_json(ctx.harmonics()[i]);
    table.push_back(std::move(entry));
  }
  return {{"kind", "sphere"}, {"q", ctx.q()}, {"rho", ctx.rho()},
          {"dims", {ctx.dims().even, ctx.dims().odd}}, {"harmonics", std::move(table)}};
}

Json rank_to_json(const RankReport& r) {
  return {{"rank", r.rank},
          {"scale", r.scale},
          {"smallest_kept", r.smallest_kept},
          {"largest_dropped", r.largest_dropped},
          {"sv_gap", finite_or_null(r.margin)}};
}

Json cohomology_to_json(const CohomologyReport& r) {
  Json degrees = Json::array();
  for (const auto& d : r.degrees)
    degrees.push_back({{"p", d.p},
                       {"dim_omega", d.form_dim},
                       {"rank_d", d.rank_d},
                       {"betti", d.betti},
                       {"rank_detail", rank_to_json(d.rank_detail)}});
  return {{"tol", r.tol}, {"betti", r.betti()}, {"min_sv_gap", finite_or_null(r.min_margin())},
          {"degrees", std::move(degrees)}};
}

}  // namespace fuzzsuper
