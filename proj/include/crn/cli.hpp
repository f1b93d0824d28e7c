#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace crn {

/// Exit codes of the `crn` tool.
enum ExitCode : int { kExitOk = 0, kExitInternal = 1, kExitInput = 2, kExitUndecided = 3, kExitNumeric = 4 };

inline constexpr const char* kToolVersion = "crn 1.0.0";

/// Runs the command line `args` (program name excluded). Machine output goes
/// to `out`, diagnostics and --verbose tables to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace crn
