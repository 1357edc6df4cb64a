#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace heats::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // environment or data problem
inline constexpr int kExitUsage = 2;    // bad flags or invalid input

/// Runs the command line `args` (args[0] is the program name) writing to
/// `out`/`err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace heats::cli
