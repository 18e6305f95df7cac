#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bbpg {

enum class Command { solve, study, diagnose_kappa };

/// Thrown by parse_config after printing --help; maps to exit code 0.
struct HelpRequested {};

/// Resolved run configuration. Defaults reproduce the coupled benchmark
/// study when only levels are given: alpha = 2^(-2 level),
/// M = round(2^(3 level/2 + 1)), t0 = 1e-5, max_iter = 500.
struct RunConfig {
  Command command = Command::solve;
  int level = 3;
  int level_min = 1;
  int level_max = 6;
  std::optional<double> alpha;
  double t0 = 1e-5;
  int max_iter = 500;
  std::string out_dir;  // --out, else $BANGBANG_PG_OUT, else "out"
  bool parallel_levels = false;
  bool analytic = false;
  std::uint64_t seed = 0;  // recorded in metadata; CLI runs are deterministic
};

/// Parses argv-style arguments (without the program name) plus an optional
/// JSON config file (--config). Flags override file values override
/// defaults; unknown flags or JSON keys are rejected with ConfigError.
RunConfig parse_config(const std::vector<std::string>& args);

/// Executes the configured command and writes its artifacts. Returns the
/// process exit code (0 on success).
int main_dispatch(const RunConfig& config);

/// Full command-line entry: parse, dispatch, map errors to exit codes
/// (usage/config 2, solver 3, I/O 4).
int run_cli(int argc, const char* const* argv);

}  // namespace bbpg
