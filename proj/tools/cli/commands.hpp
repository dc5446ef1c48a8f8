#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pdq::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitParse = 3;
inline constexpr int kExitNumerical = 4;

/// Runs one command line (without the program name) and returns the exit
/// status. Results go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pdq::cli
