#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace vortex::cli {

enum ExitCode : int {
  kSuccess = 0,
  kInternalError = 1,
  /// Non-positive solution, or a validation check failed.
  kRejectedSolution = 2,
  kUsage = 64,
  kDataFormat = 65,
};

/// Runs one command line (without the program name) and returns its exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace vortex::cli
