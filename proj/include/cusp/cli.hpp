#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cusp {

// Exit codes of the command-line tool.
enum ExitCode : int { exit_ok = 0, exit_computation = 1, exit_input = 2 };

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cusp
