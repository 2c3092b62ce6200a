#pragma once

// The witness ideal Z over A: X is in Z iff some finite u in T has, for every
// a in X, a point outside U^a. On finite X the least such |u| is the pierce
// number; on the compact circle, X is in Z iff the pierce numbers of its
// finite prefixes stay bounded.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nonrn/group.hpp"
#include "nonrn/index.hpp"

namespace nonrn {

enum class Certificate { kExact, kHeuristic };
std::string to_string(Certificate c);

struct PierceResult {
  std::size_t size = 0;
  std::vector<Q1> witness;  // sorted ascending
  Certificate certificate = Certificate::kExact;
};

// Exact-mode bound on |X|: NONRN_PIERCE_LIMIT if set, else 64.
std::size_t default_exact_limit();

struct PierceOptions {
  std::size_t exact_limit = default_exact_limit();
  bool allow_heuristic = false;  // greedy fallback above exact_limit
};

// Every a in X has some point of u outside U^a.
bool check_witness(std::span<const Q1> u, std::span<const IndexElement> x);

// Minimum piercing of the closed complements T \ U^a. Among minimum
// witnesses the lexicographically smallest is returned. Throws
// SizeLimitExceeded above the exact bound unless heuristics are allowed.
PierceResult pierce_number(std::span<const IndexElement> x,
                           const PierceOptions& opts = {});

// Same, over precomputed complements T \ U^a (none of them empty).
PierceResult pierce_complements(std::span<const ClosedRegion> complements,
                                const PierceOptions& opts = {});

// Least n such that X splits into n parts whose supports each fail to
// cover T, or nullopt when that exceeds max_parts. Exhaustive; throws
// SizeLimitExceeded for |X| > 12.
std::optional<std::size_t> pierce_by_partition(std::span<const IndexElement> x,
                                               std::size_t max_parts);

// Canonical a with u inside U^a, showing that no finite u witnesses A itself.
IndexElement escape_witness(std::span<const Q1> u);

struct TrendPoint {
  std::size_t m = 0;        // prefix length in the canonical enumeration
  std::size_t members = 0;  // |X restricted to that prefix|
  std::size_t pierce = 0;
  Certificate certificate = Certificate::kExact;
};

struct TrendReport {
  std::vector<TrendPoint> checkpoints;
  bool bounded_looking = true;
  bool heuristic = false;  // some checkpoint fell back to the greedy bound
};

// Membership test for a family X: (position in enumeration, element).
using FamilyPredicate = std::function<bool(std::size_t, const IndexElement&)>;

// Pierce numbers of X restricted to each prefix of `prefix`. Checkpoints are
// prefix lengths, each at most prefix.size(); they are solved in ascending
// order, each one starting from the sets the previous one needed. The
// verdict is bounded-looking iff the last three checkpoints agree; it is a
// heuristic, not a decision. `threads` only spreads the complement
// computation; results do not depend on it.
TrendReport ideal_trend(std::span<const IndexElement> prefix,
                        const FamilyPredicate& member,
                        std::span<const std::size_t> checkpoints,
                        const PierceOptions& opts = {}, unsigned threads = 1);

}  // namespace nonrn
