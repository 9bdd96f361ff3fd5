#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace goalbench::cli {

enum ExitCode : int
{
  kOk = 0,
  kValidation = 1,
  kInput = 2,
  kSolver = 3,
};

/// Runs the command line `args` (without the program name). Reports go to
/// `out`, diagnostics to `err`. Every option can also be set through an
/// environment variable named GOALBENCH_<OPTION>, e.g. GOALBENCH_DATA.
int run(const std::vector<std::string> & args, std::ostream & out, std::ostream & err);

} // namespace goalbench::cli
