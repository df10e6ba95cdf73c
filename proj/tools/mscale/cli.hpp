#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mscale::cli {

// Stable process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,    // bad flags or parameters
  kExitIo = 3,       // unreadable or malformed input
  kExitNumeric = 4,  // numeric failure (zero variance, blow-up, degenerate test)
};

/// Runs the tool with `args` (without the program name), writing normal output
/// to `out` and diagnostics to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mscale::cli
