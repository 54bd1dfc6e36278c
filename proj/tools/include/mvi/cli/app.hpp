#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mvi::cli {

enum ExitCode : int {
  kOk = 0,
  /// A circuit failed verification or a stored cost did not match.
  kVerifyFailed = 1,
  /// Bad arguments or malformed input files.
  kBadInput = 2,
  /// A guard refused the request.
  kRefused = 3,
};

/// Runs one command line (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mvi::cli
