#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nhfs::cli {

enum ExitCode : int {
  kOk = 0,
  kNotConverged = 2,  // also used for a term-count mismatch in `compare`
  kInputError = 3,
  kNumericalError = 4,
};

/// Runs one CLI invocation; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nhfs::cli
