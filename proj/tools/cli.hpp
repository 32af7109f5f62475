#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace setbound::cli {

/// Exit codes of the command-line tool.
inline constexpr int kExitSafe = 0;
inline constexpr int kExitUnknown = 1;
inline constexpr int kExitFalsified = 2;
inline constexpr int kExitError = 3;

/// Runs the tool on `args` (without the program name). Results go to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace setbound::cli
