#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>

namespace mphase::cli {

enum ExitCode : int { kSuccess = 0, kVerificationFailed = 1, kUsageError = 2 };

enum class Format { kCsv, kJson };

/// Parsed command line for one invocation.
struct RunConfig {
  std::string command;
  int d = 3;
  std::optional<int> n;
  std::optional<int> n_max;
  std::size_t samples = 100000;
  std::uint64_t seed = 1;
  std::optional<int> grid;
  std::optional<Format> format;
  std::string out_path;
  std::string suite;
  std::size_t budget = 10'000'000;
  std::string cost = "fidelity";
  std::size_t trials = 200;
  std::optional<double> inject_chi_offdiag;  // verify: negative-control hook
};

/// Shortest decimal with 9 significant digits, locale independent.
std::string format_number(double value);

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

int cmd_fidelity(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_variance(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_density(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_simulate(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace mphase::cli
