#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace contactlab::cli {

enum ExitCode : int { kOk = 0, kUsage = 2, kIo = 3 };

/// Runs one command line (without the program name). Reports go to out,
/// diagnostics and trace lines to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace contactlab::cli
