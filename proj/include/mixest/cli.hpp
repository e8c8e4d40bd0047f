#pragma once

#include <iosfwd>

namespace mixest {

/// Exit codes: 0 success, 2 input or degenerate-problem error, 3 unsolved case.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitUnsolved = 3;

/// Entry point of the `mixest` command line; data goes to `out`, diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mixest
