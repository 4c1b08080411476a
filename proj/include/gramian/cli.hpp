#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gkit::cli {

/// Process exit codes.
enum ExitCode : int {
  kSuccess = 0,
  kInputError = 1,
  kHypothesisViolated = 2,
  kUsage = 64,
};

/// Runs the command line `args` (args[0] is the program name). JSON goes to
/// `out` unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gkit::cli
