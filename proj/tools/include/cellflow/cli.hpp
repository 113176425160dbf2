#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cellflow::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kInputFailure = 2,
    kSmellsFound = 3,
};

/// Runs one command. args excludes the program name. Documents go to out,
/// diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace cellflow::cli
