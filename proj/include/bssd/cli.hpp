#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bssd::cli {

inline constexpr int kExitClean = 0;
inline constexpr int kExitFindings = 1;
inline constexpr int kExitUsage = 2;

/// Runs the `bssd` command line. `args` excludes the program name.
/// Results go to `out`, diagnostics and log lines to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bssd::cli
