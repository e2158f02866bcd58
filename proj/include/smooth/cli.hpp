#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace smooth::cli {

enum ExitCode : int { kOk = 0, kUsage = 2, kBudget = 3, kNumeric = 4 };

/// Runs one CLI invocation. `args` excludes the program name. Regular output
/// goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace smooth::cli
