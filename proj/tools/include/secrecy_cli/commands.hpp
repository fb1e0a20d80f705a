#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace secrecy::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitParse = 2,
  kExitNoConvergence = 3,
  kExitInfeasible = 4,
};

/// Runs the command line `args` (without the program name). Output files are
/// written only after every computation has finished.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace secrecy::cli
