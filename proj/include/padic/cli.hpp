#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace padic::cli {

/// Exit statuses of the `padic` tool.
enum ExitCode : int {
  kOk = 0,
  kVerdictNegative = 1,
  kConfigError = 2,
  kEvaluationError = 3,
  kPrecisionError = 4,
};

/// Runs the command line `args` (without the program name), writing results to
/// `out` and diagnostics to `err`. Returns the exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace padic::cli
