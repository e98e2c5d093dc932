#pragma once

#include <string>
#include <vector>

namespace svddfraud::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitStageFailure = 2;

/// Parses and runs one command line. Returns the process exit code.
int run(int argc, const char* const* argv);

/// Convenience overload for tests: args exclude the program name.
int run(const std::vector<std::string>& args);

}  // namespace svddfraud::cli
