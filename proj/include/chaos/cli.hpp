#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "chaos/report.hpp"

namespace chaos::cli {

/// Process exit codes.
enum ExitCode : int {
  kSuccess = 0,
  kInternalError = 1,
  kConfigError = 2,
  kBudgetError = 3,
  kSelfcheckFailure = 4,
};

struct RunConfig {
  std::string command;  // bounds | exact | diagrams | simulate | compare | sharpness | selfcheck
  std::optional<std::filesystem::path> form_path;
  std::optional<std::filesystem::path> kernel_path;
  std::optional<int> k;
  std::vector<int> M;
  std::vector<double> u;
  std::optional<int> u_grid;  // evenly spaced points on [0, max |Z|]
  std::vector<int> n;
  double V = 1.0;
  std::optional<double> v2;
  std::size_t samples = 100'000;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> dists;
  std::string format = "json";
  std::optional<std::filesystem::path> out;
  std::size_t budget_terms = 10'000'000;
  double budget_diagrams = 1e7;
};

struct CommandResult {
  Report report;
  bool failed = false;  // a selfcheck assertion did not hold
};

/// Seed from the config, else CHAOS_BOUNDS_SEED, else 1.
std::uint64_t resolve_seed(const RunConfig& config);

/// Runs one command. Throws InvalidInput for configuration problems and
/// BudgetExceeded / Overflow for budget problems.
CommandResult execute(const RunConfig& config);

/// Executes and writes the report, mapping errors to exit codes.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses command-line arguments (args[0] is the program name) and runs.
int main_entry(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err);

/// Expands "3", "1..25" style tokens into integers.
std::vector<int> parse_int_list(const std::vector<std::string>& tokens);

}  // namespace chaos::cli
