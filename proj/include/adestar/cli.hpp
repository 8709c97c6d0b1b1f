#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace adestar {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitVerification = 2;

struct RunConfig {
  std::uint64_t seed = 1;
  double tolerance = 1e-6;  // pass threshold of verification reports
  std::string emit = "json";
  double h = 0.1;
  std::string out;  // empty: write to the output stream
};

// Default seed: ADESTAR_SEED if set, else 1. Throws InvalidArgument if the
// variable is not an unsigned 64-bit integer.
std::uint64_t default_seed();

// Runs one subcommand (args excludes the program name). Bad input and
// unknown flags give 1, failed verification and failed computations give 2.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace adestar
