#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace axiom_align::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kFailure = 2 };

/// Runs one command line. `args[0]` is the program name. Normal output goes
/// to `out`, diagnostics to `err`.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace axiom_align::cli
