#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nilflow::cli {

enum ExitCode : int {
  kPass = 0,
  kCheckFailed = 1,
  kConfigError = 2,
  kNumericError = 3,
};

/// Runs the nilflow command line (arguments exclude the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nilflow::cli
