#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace trapcount::cli {

enum ExitCode : int {
    kOk = 0,
    kInputError = 1,
    kCapExceeded = 2,
    kBudgetExhausted = 3,
};

/// Runs the command line (args excludes the program name). Reports go to
/// out, diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace trapcount::cli
