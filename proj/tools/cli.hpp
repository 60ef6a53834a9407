#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace curvtri::cli {

/// Exit codes: 0 pass, 1 violation or unmet expectation, 2 usage or
/// validation error.
inline constexpr int kExitPass = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;

/// Runs the command line `args` (without the program name). Reports go to
/// `out` unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace curvtri::cli
