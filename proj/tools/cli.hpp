#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pchgeo::cli {

enum ExitCode : int {
  kOk = 0,
  kIoError = 1,        // unreadable or malformed input, unwritable output
  kBadArguments = 2,
  kGuard = 3,          // an engine refused the input
  kValidationFailed = 4,
};

/// Runs one command line (without the program name). Data goes to `out` only
/// when a path is "-"; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pchgeo::cli
