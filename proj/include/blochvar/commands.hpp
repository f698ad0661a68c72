#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bloch::cli {

enum ExitCode : int {
  kSuccess = 0,
  kNegative = 1,  ///< verdict is "no" (does not hold, not isospectral, suite failed)
  kUsage = 2,     ///< bad flags, malformed or mismatched input files
  kNumerical = 3, ///< solver budget exhausted, non-convergence
};

/// Runs one subcommand. args excludes the program name. Human-readable
/// output goes to out, diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Names accepted by `verify --suite`.
const std::vector<std::string>& suite_names();

}  // namespace bloch::cli
