#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace uff::cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitPass = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitInputError = 2;

// Run the tool on argv-style arguments (program name excluded). All
// human-readable output goes to `out`, diagnostics to `err`; report files
// are written where the arguments say. Never throws.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Seed resolution: explicit flag beats the UFF_SEED environment variable
// beats the built-in default.
std::uint64_t resolve_seed(bool seed_given, std::uint64_t seed_flag);

} // namespace uff::cli
