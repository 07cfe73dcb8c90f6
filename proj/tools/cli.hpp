#pragma once

#include <iosfwd>

namespace directions::cli {

enum ExitCode : int { ok = 0, precondition = 1, resource = 2, internal = 70, usage = 64 };

/// Runs one subcommand; reports go to `out` unless an output path is given.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace directions::cli
