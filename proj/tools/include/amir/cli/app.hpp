#pragma once

#include <iosfwd>

namespace amir::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitStale = 3;

/// `amir <command> --config <path> [--seed N] [--k N] [--threshold X] [--out DIR]`
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace amir::cli
