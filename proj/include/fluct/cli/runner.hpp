#pragma once

#include <cstdint>
#include <exception>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fluct/cli/config.hpp"
#include "fluct/cli/curve.hpp"

namespace fluct::cli {

/// Command-line overrides. None of these are read from the environment.
struct RunOptions {
  std::string out_dir = ".";
  unsigned threads = 1;
  std::optional<std::uint64_t> seed;
  std::optional<double> rel_tol;
  /// Header timestamp; empty means the current UTC time.
  std::string timestamp;
};

/// A quadrature or solver failure at a specific sweep point.
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

const std::vector<std::string_view>& subcommands();

/// Copy of cfg with every default the subcommand uses written in explicitly,
/// plus the --seed / --tol overrides. This is what output headers echo.
ScenarioConfig resolve_config(const ScenarioConfig& cfg, std::string_view subcommand, const RunOptions& opt);

struct NamedCurve {
  std::string file;  // base name, e.g. "ness_n-6.csv"
  ScalarCurve curve;
};

/// Evaluate a resolved config. Sweep points run on opt.threads workers; the
/// numbers do not depend on the thread count.
std::vector<NamedCurve> compute_scenario(const ScenarioConfig& resolved, std::string_view subcommand,
                                         const RunOptions& opt);

/// resolve, compute, write. Returns the written paths.
std::vector<std::string> run_scenario(const ScenarioConfig& cfg, std::string_view subcommand, const RunOptions& opt);

/// 0 never; 2 for configuration problems, 3 for numerical failures, 1 otherwise.
int exit_code_for(const std::exception& e);

std::string utc_timestamp();

}  // namespace fluct::cli
