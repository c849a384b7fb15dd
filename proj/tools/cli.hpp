#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

namespace blockkm::cli {

/// Process exit statuses.
enum ExitCode : int { kOk = 0, kRuntimeError = 1, kUsageError = 2 };

/// Entry point for `blockkm <cluster|bench|gen|compare> [flags]`. `args`
/// excludes the program name. Summaries go to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Logical CPU count, at least 1.
std::size_t default_workers();

}  // namespace blockkm::cli
