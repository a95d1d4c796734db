#pragma once

#include <iosfwd>

namespace wa {

/// The `wa` command line. Prints the verdict on `out` (first line is the
/// answer token), diagnostics on `err`, and returns the exit code:
/// 0 holds / constructed, 1 fails, 2 input or precondition error,
/// 3 unsupported by the theory, 4 resource limit.
int run_command(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace wa
