#pragma once

namespace bootuniq {

inline constexpr const char* kToolName = "bootuniq";
inline constexpr const char* kToolVersion = "0.1.0";

// Full command-line surface; returns the process exit code
// (0 success, 2 invalid input, 3 resource cap exceeded).
int run_cli(int argc, const char* const* argv);

}  // namespace bootuniq
