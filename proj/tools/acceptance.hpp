#pragma once

// The acceptance suites, shared by `nonrn selftest` and the acceptance test.

#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace nonrn::acceptance {

// Refutation fixture, calibrated once on the canonical enumeration: with
// these checkpoints every homomorphism below has a sample whose pierce
// numbers take three distinct values and end at 3 or more.
inline constexpr std::size_t kRefuteMMax = 16000;
inline constexpr std::size_t kRefuteCheckpoints = 15;  // geometric, down to 1
inline constexpr long kSeededBound = 5;
inline constexpr std::uint64_t kSeedCount = 10;

// Additivity suite limits.
inline constexpr std::size_t kAdditivityPrefix = 300;
inline constexpr std::size_t kAdditivityPairs = 50;
inline constexpr long kAdditivityMaxDen = 120;
inline constexpr double kAdditivitySeconds = 60.0;

struct Config {
  std::size_t refute_m_max = kRefuteMMax;
  unsigned threads = 1;
  std::set<int> skip;  // criterion numbers not to run
};

struct Result {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
};

std::vector<Result> run(const Config& config);

// "PASS 3 oracle-agreement: ..." for one criterion.
std::string format(const Result& r);

}  // namespace nonrn::acceptance
