#pragma once

#include <iosfwd>

namespace sparsify {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitInvalidArgument = 2;
inline constexpr int kExitSizeLimit = 3;
inline constexpr int kExitDegenerate = 4;

// Runs the command line; reports go to `out` unless --out is given.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sparsify
