#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace npmojo {

enum ExitCode : int { kExitOk = 0, kExitFailure = 1, kExitInput = 2, kExitConfig = 3, kExitDegenerate = 4 };

// Runs the command line (args excludes the program name); returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace npmojo
