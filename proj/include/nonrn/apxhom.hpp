#pragma once

// The map f: T -> T^A, f_a(x) = x - r^a_i on U^a_i and 0 off U^a, its
// discrepancy sets, and the harness comparing it with continuous
// homomorphisms coordinatewise given by integer multipliers.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "nonrn/group.hpp"
#include "nonrn/ideal.hpp"
#include "nonrn/index.hpp"

namespace nonrn {

// g_a(x) = c(pos) * x where pos is a's position in the canonical enumeration.
class MultiplierHom {
 public:
  static MultiplierHom zero();
  static MultiplierHom identity();
  // Positions past the end of the list wrap around.
  static MultiplierHom fixed(std::vector<long> multipliers);
  // c(pos) uniform in [-bound, bound], a pure function of (seed, pos).
  static MultiplierHom seeded(std::uint64_t seed, long bound);
  // "zero", "identity", "seed:S:C" or "list:c1,c2,...".
  static MultiplierHom parse(const std::string& spec);

  long multiplier(std::size_t pos) const;
  Q1 apply(std::size_t pos, const Q1& x) const { return x.times(Integer(multiplier(pos))); }
  const std::string& name() const { return name_; }

 private:
  enum class Kind { kFixed, kSeeded };
  Kind kind_ = Kind::kFixed;
  std::vector<long> list_{0};
  std::uint64_t seed_ = 0;
  long bound_ = 0;
  std::string name_ = "zero";
};

Q1 eval_f(const IndexElement& a, const Q1& x);

// Positions a in the prefix with f_a(x) + f_a(y) != f_a(x + y).
std::vector<std::size_t> discrepancy_c(const Q1& x, const Q1& y,
                                       std::span<const IndexElement> prefix);

struct AdditivityReport {
  Q1 x, y;
  std::vector<std::size_t> discrepancies;  // C_xy within the prefix
  std::vector<std::size_t> violations;     // x, y, x+y all in U^a yet a in C_xy
  bool witness_ok = true;                  // {x, y, x+y} witnesses C_xy
  bool ok() const { return violations.empty() && witness_ok; }
};

AdditivityReport check_additivity(const Q1& x, const Q1& y, std::span<const IndexElement> prefix);

// Positions a in the prefix with f_a(x) != g_a(x).
std::vector<std::size_t> delta_set(const MultiplierHom& g, const Q1& x,
                                   std::span<const IndexElement> prefix);

struct SampleTrend {
  Q1 x;
  TrendReport trend;
};

struct RefutationReport {
  std::string g;
  std::vector<SampleTrend> samples;
  std::size_t best = 0;  // sample with the largest final pierce number, first on ties
  bool heuristic = false;
};

// Default samples: every rational with denominator at most 64.
std::vector<Q1> default_samples();
// Geometric checkpoints m_max, m_max/2, ... (integer halving), at most
// `count` values, returned ascending.
std::vector<std::size_t> geometric_checkpoints(std::size_t m_max, std::size_t count = 15);

// Trend of Delta_x restricted to growing prefixes, for each sample x. Each
// checkpoint must be at most prefix.size().
RefutationReport refute(const MultiplierHom& g, std::span<const Q1> samples,
                        std::span<const IndexElement> prefix,
                        std::span<const std::size_t> checkpoints,
                        const PierceOptions& opts = {}, unsigned threads = 1);

}  // namespace nonrn
