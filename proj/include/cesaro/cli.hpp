#pragma once

#include <string>
#include <vector>

namespace cesaro {

/// Exit codes of the command-line tool.
enum ExitCode : int {
    kExitPass = 0,
    kExitFail = 1,
    kExitConfig = 2,
    kExitNumerical = 3,
    kExitInconclusive = 4,
};

/// Runs the tool on argv-style arguments (args[0] is the program name).
int run_cli(const std::vector<std::string>& args);
int run_cli(int argc, char** argv);

} // namespace cesaro
