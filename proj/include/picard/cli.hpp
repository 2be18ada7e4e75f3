#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace picard::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kPrecondition = 3,
  kDiscrepancies = 4,
};

/// Runs one command line; args excludes the program name. Output bytes
/// depend only on the arguments (and the fixture files for verify).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace picard::cli
