#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "oqho/pr_core.hpp"

namespace oqho::cli {

enum ExitCode : int {
  kExitRealizable = 0,
  kExitNotRealizable = 1,
  kExitUsage = 2,
  kExitInconclusive = 3,
};

int exit_code_for(Verdict v);

enum class Command { kCheck, kSynthesize, kConvert, kSpectrum, kFactor, kExample };

struct CliConfig {
  Command command = Command::kExample;
  std::string input_path;
  std::optional<std::string> output_path;
  /// "J" or a path to a real matrix file.
  std::optional<std::string> theta_spec;
  double tol = kDefaultCheckTolerance;
  int samples = 20;
  std::uint64_t seed = 42;
  /// "pm2ac" or "ac2pm"; convert only.
  std::optional<std::string> direction;
};

int cmd_check(const CliConfig& config, std::ostream& out, std::ostream& err);
int cmd_synthesize(const CliConfig& config, std::ostream& out, std::ostream& err);
int cmd_convert(const CliConfig& config, std::ostream& out, std::ostream& err);
int cmd_spectrum(const CliConfig& config, std::ostream& out, std::ostream& err);
int cmd_factor(const CliConfig& config, std::ostream& out, std::ostream& err);
int cmd_example(const CliConfig& config, std::ostream& out, std::ostream& err);

/// Parses `args` (without the program name) and dispatches. Library errors
/// are reported on `err` and mapped to exit codes:
///   NotRealizableError -> 1
///   ParseError, DimensionError, StructureError, SingularError -> 2
///   NearPoleError and other numerical failures -> 3
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace oqho::cli
