#pragma once

#include <iosfwd>

namespace bohr {

// Exit codes: 0 success, 1 probe/lemma failure, 2 invalid flags or
// preconditions, 3 hypothesis violation, 4 no root in (0,1),
// 5 majorant inequality violated below the radius.
inline constexpr int kExitUsage = 2;
inline constexpr int kExitHypothesis = 3;
inline constexpr int kExitNoRoot = 4;
inline constexpr int kExitViolation = 5;

/// Full command-line front end; reads flags, writes reports to `out` (or the
/// path given by -o) and diagnostics to `err`. Returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bohr
