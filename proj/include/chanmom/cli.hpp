#pragma once

#include <ostream>

namespace chanmom::cli {

// Exit codes
inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;      // verification failure or invalid arguments
inline constexpr int kSingularGram = 2;
inline constexpr int kResourceCap = 3;

// Parses argv and runs one subcommand; results go to `out` unless --out names a file.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace chanmom::cli
