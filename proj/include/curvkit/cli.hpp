#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace curvkit::cli {

inline constexpr std::string_view kVersion = "1.0.0";

enum ExitCode : int { kPass = 0, kViolation = 1, kUsage = 2 };

/// Runs `curv` with the arguments after the program name. Reports go to
/// `out` unless --output names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace curvkit::cli
