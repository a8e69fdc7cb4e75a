#include <doctest.h>

#include <limits>

#include "fuzzsuper/serialize.hpp"
#include "support.hpp"

using namespace fuzzsuper;

TEST_CASE("complex numbers and labels") {
  const Complex c(1.25, -3.0);
  CHECK(complex_from_json(complex_to_json(c)) == c);
  CHECK_THROWS_AS(complex_from_json(Json::array({1.0})), std::invalid_argument);
  for (const auto& l : harmonic_labels(2)) CHECK(label_from_json(label_to_json(l)) == l);
  CHECK(label_to_json({3, 1, -2}) == Json::array({3, 2, -2, 1}));
  CHECK_THROWS_AS(label_from_json(Json::array({3, 3, -2, 1})), std::invalid_argument);
  CHECK_THROWS_AS(label_from_json(Json::array({1, 1, 5, 0})), std::invalid_argument);
}

TEST_CASE("graded matrices survive a text round trip") {
  std::mt19937_64 rng(71);
  const GradedMatrix m = testing_support::random_graded({2, 3}, rng);
  const Json j = Json::parse(matrix_to_json(m).dump());
  const GradedMatrix back = matrix_from_json(j);
  CHECK(back.dims() == m.dims());
  CHECK((back - m).max_abs() == 0.0);
  Json bad = j;
  bad["even"] = 3;
  CHECK_THROWS_AS(matrix_from_json(bad), DimensionError);
}

TEST_CASE("fuzzy elements") {
  FuzzyElement e;
  e.q = 2;
  e.coeffs[{1, 1, 0}] = Complex(0.5, 2.0);
  e.coeffs[{4, 0, -4}] = -1.0;
  const FuzzyElement back = element_from_json(Json::parse(element_to_json(e).dump()));
  CHECK(back.q == 2);
  CHECK(back.max_abs_diff(e) == 0.0);
}

TEST_CASE("contexts") {
  const FuzzySuperSphere s = FuzzySuperSphere::build(1, 2.0);
  const Json j = context_to_json(s, true);
  CHECK(j["kind"] == "supersphere");
  CHECK(j["q"] == 1);
  CHECK(j["rho"] == 2.0);
  CHECK(j["dims"] == Json::array({1, 2}));
  CHECK(j["harmonics"].size() == 9);
  for (std::size_t i = 0; i < 9; ++i)
    CHECK((matrix_from_json(j["harmonics"][i]["matrix"]) - s.harmonics()[i]).max_abs() == 0.0);
  CHECK_FALSE(context_to_json(s, false)["harmonics"][0].contains("matrix"));
  const Json b = context_to_json(FuzzySphere::build(2), false);
  CHECK(b["kind"] == "sphere");
  CHECK(b["harmonics"].size() == 9);
}

TEST_CASE("rank and cohomology reports") {
  RankReport r;
  r.rank = 3;
  r.margin = std::numeric_limits<double>::infinity();
  CHECK(rank_to_json(r)["sv_gap"].is_null());
  r.margin = 1e6;
  CHECK(rank_to_json(r)["sv_gap"] == 1e6);
  CohomologyReport c;
  c.degrees.push_back({0, 9, 8, r, 1});
  const Json j = cohomology_to_json(c);
  CHECK(j["betti"] == Json::array({1}));
  CHECK(j["degrees"][0]["dim_omega"] == 9);
  CHECK(j["min_sv_gap"] == 1e6);
}
