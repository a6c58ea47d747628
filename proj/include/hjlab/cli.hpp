#pragma once

// hjlab command-line front end.
//
// Exit codes: 0 success, 1 solver failure (non-convergence, blow-up,
// positivity loss), 2 invalid input or usage error.

#include <iosfwd>
#include <string>
#include <vector>

namespace hjlab {

inline constexpr int kExitOk = 0;
inline constexpr int kExitSolverFailure = 1;
inline constexpr int kExitInvalidInput = 2;

/// Environment variable consulted for the output directory when --out is
/// not given; falls back to ./hjlab-out.
inline constexpr const char* kOutputDirEnv = "HJLAB_OUT";

/// args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv);

}  // namespace hjlab
