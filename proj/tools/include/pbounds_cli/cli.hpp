#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace pbounds::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

inline constexpr const char* kSchemaVersion = "passive-bounds/1";

/// Runs one subcommand. args excludes the program name. Reports go to files
/// under --out; progress and errors go to the streams.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pbounds::cli
