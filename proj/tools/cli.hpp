#ifndef MANTEL_TOOLS_CLI_HPP
#define MANTEL_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace mantel::cli {

enum ExitCode : int {
  kOk = 0,
  kIoFailure = 1,
  kUsageError = 2,
  kBudgetExceeded = 3,
};

/// Runs one command line; args excludes the program name. Results and the
/// summary line go to `out` (the summary to `err` when results use stdout).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mantel::cli

#endif  // MANTEL_TOOLS_CLI_HPP
