#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace revsynth::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitParseError = 1;
inline constexpr int kExitVerifyFailed = 2;
inline constexpr int kExitTooWide = 3;

/// Runs one subcommand. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace revsynth::cli
