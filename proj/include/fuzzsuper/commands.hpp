#pragma once

// Command implementations behind the fuzzsuper executable.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fuzzsuper/serialize.hpp"

namespace fuzzsuper {

enum class OutputFormat { Json, Csv, Text };

inline constexpr int kLargeQ = 60;
inline constexpr std::uint64_t kDefaultSeed = 20240917;
inline constexpr double kDefaultResidualTol = 1e-9;

/// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInconclusive = 3;

struct RunConfig {
  std::string command;
  std::vector<int> q_list;
  int j1_2 = 1;
  int j2_2 = 1;
  std::optional<int> p_max;
  double rho = 1.0;
  std::optional<double> tol;
  std::uint64_t seed = kDefaultSeed;
  OutputFormat format = OutputFormat::Text;
  std::string out;
  bool allow_large = false;
  std::vector<std::string> suites;
  std::string poly;
  int jmax_2 = 4;
};

/// Throws std::invalid_argument on q < 1, q > 60 without allow_large, tol <= 0 or rho <= 0.
void validate(const RunConfig& cfg);

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Json>> rows;
};

struct CommandOutput {
  Json report;
  Table table;
  std::vector<std::string> notes;
  int exit_code = kExitOk;
};

/// Names accepted by --suite, in run order.
const std::vector<std::string>& suite_names();

CommandOutput cmd_verify(const RunConfig& cfg);
CommandOutput cmd_converge(const RunConfig& cfg);
CommandOutput cmd_cohomology(const RunConfig& cfg);
CommandOutput cmd_oracle(const RunConfig& cfg);

std::string render(const CommandOutput& out, OutputFormat format);

/// Doubled half-integer from "1/2", "0.5", "3/2", "2".
int parse_half_integer(const std::string& s);
/// "1,2,5" and ranges "2-6".
std::vector<int> parse_q_list(const std::string& s);

/// Full command-line entry point.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fuzzsuper
