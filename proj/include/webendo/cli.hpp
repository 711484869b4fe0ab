#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace webendo {

// Exit codes of the command line tool.
inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace webendo
