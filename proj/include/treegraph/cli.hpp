#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace treegraph {

/// Process exit codes of the command-line tool.
enum ExitCode : int {
  kExitPass = 0,
  kExitCheckFailed = 1,
  kExitInputError = 2,
  kExitCapacityError = 3,
};

/// Runs one command line (args[0] is the program name). The JSON report goes
/// to `out`, a human-readable summary to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace treegraph
