#pragma once

#include <iosfwd>

namespace corostab {

enum ExitCode : int { kExitOk = 0, kExitError = 1, kExitMismatch = 2 };

/// Entry point of the `corostab` command line tool.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace corostab
