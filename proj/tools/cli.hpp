#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ncconvex::cli {

enum ExitCode : int { kPass = 0, kFalsified = 1, kUsageError = 2 };

/// Runs one command line (args[0] is the program name). The JSON report goes
/// to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ncconvex::cli
