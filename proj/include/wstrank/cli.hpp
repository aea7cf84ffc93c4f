#pragma once

#include <iosfwd>

namespace wstrank::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kUsage = 2;
inline constexpr int kDataError = 3;
inline constexpr int kNumericError = 4;

/// Entry point for the `wstrank` tool. Subcommands: simulate, rank,
/// compare. Output goes to `out` unless --out names a file.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace wstrank::cli
