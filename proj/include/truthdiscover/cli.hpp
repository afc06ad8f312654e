#pragma once

#include <ostream>

namespace truthdiscover {

/// Exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitFatal = 1, kExitNotConverged = 2 };

/// Entry point of the `truthdiscover` tool. Summaries go to `out`,
/// diagnostics and errors to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace truthdiscover
