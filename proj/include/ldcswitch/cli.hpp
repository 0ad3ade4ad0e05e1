#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ldcswitch {

// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitNo = 1;
inline constexpr int kExitMismatch = 2;
inline constexpr int kExitCap = 3;
inline constexpr int kExitUsage = 64;

/// Runs one command line (without the program name). Reports go to out,
/// diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ldcswitch
