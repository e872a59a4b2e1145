#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace rmtjac::cli {

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitStatisticalFail = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInternal = 3;

/// Environment variable consulted when no --seed is given.
inline constexpr const char* kSeedEnvVar = "RMTJAC_SEED";
inline constexpr unsigned long long kDefaultSeed = 20240611ULL;

/// Runs one command. `args` excludes the program name, e.g.
/// {"sample", "--construction", "haar-block", ...}. Returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rmtjac::cli
