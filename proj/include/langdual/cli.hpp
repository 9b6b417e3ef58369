#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace langdual {

/// Exit codes of the command-line tool.
enum ExitCode : int { kPass = 0, kMathFailure = 1, kInputError = 2 };

/// Runs one CLI invocation; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace langdual
