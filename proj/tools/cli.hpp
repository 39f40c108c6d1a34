#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace codedloops::cli {

enum ExitCode : int { kOk = 0, kPropertyFails = 1, kUsage = 2 };

/// Runs the command line `args` (args[0] is the program name). Reports go to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace codedloops::cli
