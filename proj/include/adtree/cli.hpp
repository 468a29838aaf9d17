#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace adtree::cli {

enum ExitCode : int {
    kOk = 0,
    kInvalidModel = 1,
    kUsage = 2,
    kOracleMismatch = 3,
};

/// Runs one command. `args` excludes the program name. The requested artifact
/// goes to `out`; diagnostics and progress go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace adtree::cli
