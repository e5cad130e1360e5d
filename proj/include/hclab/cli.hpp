#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hclab {

inline constexpr int kExitOk = 0;
inline constexpr int kExitAssertion = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitResource = 3;

// Environment variable holding the default seed.
inline constexpr const char* kSeedEnvVar = "HCLAB_SEED";

/// Runs the command line (args excludes the program name). Data goes to `out`, logs to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hclab
