#include <doctest.h>

#include <fstream>
#include <sstream>

#include "fuzzsuper/commands.hpp"
#include "fuzzsuper/superpoly.hpp"

using namespace fuzzsuper;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "fuzzsuper");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, sep)) out.push_back(cell);
  return out;
}

}  // namespace

TEST_CASE("half-integers and q lists") {
  CHECK(parse_half_integer("1/2") == 1);
  CHECK(parse_half_integer("3/2") == 3);
  CHECK(parse_half_integer("0.5") == 1);
  CHECK(parse_half_integer("2") == 4);
  CHECK_THROWS(parse_half_integer("1/3"));
  CHECK_THROWS(parse_half_integer("0.3"));
  CHECK_THROWS(parse_half_integer("x"));
  CHECK(parse_q_list("1,2,5") == std::vector<int>{1, 2, 5});
  CHECK(parse_q_list("2-4,7") == std::vector<int>{2, 3, 4, 7});
  CHECK_THROWS(parse_q_list("4-2"));
  CHECK_THROWS(parse_q_list(""));
}

TEST_CASE("configuration validation") {
  RunConfig cfg;
  cfg.q_list = {1};
  CHECK_NOTHROW(validate(cfg));
  cfg.q_list = {0};
  CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
  cfg.q_list = {61};
  CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
  cfg.allow_large = true;
  CHECK_NOTHROW(validate(cfg));
  cfg.q_list = {2};
  cfg.tol = 0.0;
  CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
  cfg.tol.reset();
  cfg.rho = -1.0;
  CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run({"verify", "--q", "0"}).code == kExitUsage);
  CHECK(run({"verify", "--q", "61"}).code == kExitUsage);
  CHECK(run({"verify", "--q", "1", "--suite", "nope"}).code == kExitUsage);
  CHECK(run({"converge", "--j1", "1/3"}).code == kExitUsage);
  CHECK(run({"frobnicate"}).code == kExitUsage);
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"oracle", "--poly", "x7"}).code == kExitUsage);
}

TEST_CASE("verify reports residuals as JSON") {
  const Run r = run({"verify", "--q", "1", "--suite", "casimir,dimensions", "--format", "json"});
  CHECK(r.code == kExitOk);
  const Json j = Json::parse(r.out);
  CHECK(j["passed"] == true);
  CHECK(j["config"]["seed"] == kDefaultSeed);
  bool saw_relation = false;
  for (const auto& c : j["checks"]) {
    CHECK(c.contains("residual"));
    if (c["check"] == "supersphere_relation") {
      saw_relation = true;
      CHECK(c["residual"].get<double>() < 1e-10);
    }
  }
  CHECK(saw_relation);
}

TEST_CASE("verify harmonics at q = 3") {
  const Run r = run({"verify", "--q", "3", "--suite", "harmonics"});
  CHECK(r.code == kExitOk);
}

TEST_CASE("converge: trivial rows and skipped rows") {
  const Run r = run({"converge", "--j1", "0", "--j2", "1", "--q-list", "1,3", "--format", "json"});
  CHECK(r.code == kExitOk);
  const Json j = Json::parse(r.out);
  REQUIRE(j["rows"].size() == 2);
  for (const auto& row : j["rows"]) CHECK(row["delta"].get<double>() < 1e-12);
  const Run s = run({"converge", "--j1", "1", "--j2", "1", "--q-list", "1,2", "--format", "json"});
  CHECK(Json::parse(s.out)["rows"].size() == 1);
  CHECK(s.err.find("skipped q = 1") != std::string::npos);
}

TEST_CASE("converge: CSV matches JSON to the last bit") {
  const Run js = run({"converge", "--q-list", "2,5,10", "--format", "json"});
  const Run cs = run({"converge", "--q-list", "2,5,10", "--format", "csv"});
  REQUIRE(js.code == kExitOk);
  REQUIRE(cs.code == kExitOk);
  const Json rows = Json::parse(js.out)["rows"];
  std::stringstream ss(cs.out);
  std::string line;
  std::getline(ss, line);
  const auto header = split(line, ',');
  CHECK(header == std::vector<std::string>{"j1", "j2", "q", "c_q", "c_classical", "delta", "product_residual"});
  std::size_t k = 0;
  while (std::getline(ss, line)) {
    const auto cells = split(line, ',');
    REQUIRE(cells.size() == header.size());
    REQUIRE(k < rows.size());
    CHECK(std::stoi(cells[2]) == rows[k]["q"].get<int>());
    for (std::size_t i = 3; i < cells.size(); ++i) CHECK(std::stod(cells[i]) == rows[k][header[i]].get<double>());
    ++k;
  }
  CHECK(k == rows.size());
  // delta decreases along the list
  CHECK(rows[1]["delta"].get<double>() < rows[0]["delta"].get<double>());
  CHECK(rows[2]["delta"].get<double>() < rows[1]["delta"].get<double>());
}

TEST_CASE("cohomology in degree zero only") {
  const Run r = run({"cohomology", "--q", "1", "--pmax", "0", "--format", "json"});
  CHECK(r.code == kExitOk);
  const Json j = Json::parse(r.out);
  CHECK(j["levels"][0]["super"]["betti"] == Json::array({1}));
  CHECK(j["levels"][0]["body"]["betti"] == Json::array({1}));
}

TEST_CASE("cohomology at q = 1") {
  const Run r = run({"cohomology", "--q", "1", "--format", "json"});
  CHECK(r.code == kExitOk);
  const Json j = Json::parse(r.out);
  CHECK(j["levels"][0]["super"]["betti"] == Json::array({1, 0, 0, 1, 0, 0}));
  CHECK(j["levels"][0]["body"]["betti"] == Json::array({1, 0, 0, 1}));
  CHECK(j["levels"][0]["h_beta"]["passed"] == true);
  CHECK(j["inconclusive"] == false);
}

TEST_CASE("oracle command") {
  const Run r = run({"oracle", "--poly", "x3^2", "--format", "json"});
  CHECK(r.code == kExitOk);
  const Json j = Json::parse(r.out);
  CHECK(j["normal_form"] == to_text(parse_superpoly("1 - x1^2 - x2^2 - 2 t4 t5")));
  CHECK(j["parity"] == "even");
  const Run t = run({"oracle", "--jmax", "1"});
  CHECK(t.code == kExitOk);
  CHECK(t.out.find("c_classical") != std::string::npos);
}

TEST_CASE("report goes to --out") {
  const std::string path = "cli_test_report.json";
  const Run r = run({"verify", "--q", "1", "--suite", "dimensions", "--format", "json", "--out", path});
  CHECK(r.code == kExitOk);
  CHECK(r.out.empty());
  std::ifstream f(path);
  CHECK(Json::parse(f)["passed"] == true);
}
