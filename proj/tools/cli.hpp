#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace seucal::cli {

/// Exit codes.
inline constexpr int kExitDecision = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumeric = 3;

/// Runs one invocation. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace seucal::cli
