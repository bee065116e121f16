#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace a22 {

enum ExitCode : int { kExitOk = 0, kExitFailed = 1, kExitUsage = 2, kExitData = 3 };

/// Runs the a22 command line; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace a22
