#ifndef RADO_CLI_HPP
#define RADO_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace rado::cli {

enum ExitCode : int { kHolds = 0, kFails = 1, kUsage = 2, kUndecided = 3 };

/// Runs one command line (without the program name) and returns its exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rado::cli

#endif  // RADO_CLI_HPP
