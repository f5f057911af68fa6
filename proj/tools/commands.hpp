#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace gsqg::cli {

enum ExitCode : int { kOk = 0, kAssertionFailed = 1, kUsageError = 2 };

// Runs one command line (without the program name). CSV goes to `out` unless --out
// names a file; diagnostics and the one-line summary go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gsqg::cli
