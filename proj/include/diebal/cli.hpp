#pragma once

#include <iosfwd>

namespace diebal::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitOutOfTolerance = 1;
inline constexpr int kExitError = 2;

/// Entry point of the `diebal` command line tool. Writes reports to `out` and
/// diagnostics to `err`. Returns 0 on success, 1 when `check` finds a port
/// out of tolerance and 2 on any error (including usage errors).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace diebal::cli
