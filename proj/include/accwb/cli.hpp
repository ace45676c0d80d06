#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace accwb {

/// Exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitNegative = 1, kExitUsage = 2, kExitInternal = 3 };

/// Runs the tool on `args` (without the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace accwb
