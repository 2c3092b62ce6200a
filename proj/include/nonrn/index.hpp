#pragma once

// The index set A: finite families of disjoint open rational balls with a
// designated rational point in each ball, closed under the additive
// coherence conditions checked by validate().

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nonrn/group.hpp"

namespace nonrn {

struct IndexElement {
  std::vector<Ball> balls;  // U_1, ..., U_n (open)
  std::vector<Q1> points;   // r_1, ..., r_n with r_i in U_i

  std::size_t n() const { return balls.size(); }
  // U = U_1 u ... u U_n.
  Region support() const;
  bool support_contains(const Q1& x) const;
  // Index of the ball containing x, if any.
  std::optional<std::size_t> locate(const Q1& x) const;

  friend bool operator==(const IndexElement& a, const IndexElement& b) = default;
};

enum class Clause {
  kOk,
  kStructure,     // empty, mismatched lengths or a closed ball
  kOverlap,       // balls i and j intersect
  kNotProper,     // the balls cover T
  kPointOutside,  // points[i] not in balls[i]
  kAdditivity,    // neither clause holds for the pair (i, j)
};

std::string to_string(Clause c);

// Result of validate(). On failure `clause`, `i` and `j` name the first
// violated condition in scan order (i ascending, then j ascending, 0-based).
// On success the flags record which coherence clauses the element used.
struct Validation {
  Clause clause = Clause::kOk;
  std::size_t i = 0;
  std::size_t j = 0;
  bool uses_sum_clause = false;           // some (i, j) matched a point r_k
  bool uses_sum_clause_distinct = false;  // ... with k different from i and j
  bool uses_empty_clause = false;         // some (i, j) had empty sum in U

  bool ok() const { return clause == Clause::kOk; }
  explicit operator bool() const { return ok(); }
};

Validation validate(const IndexElement& a);

// Element with n = ys.size(), ys[i] in balls[i] and points == ys. Radius is
// min(delta/4, 1/(4n)) where delta is the least distance between distinct
// members of {y_i} u {y_i + y_j}. Throws DegenerateInput on an empty or
// repeated input.
IndexElement from_points(std::span<const Q1> ys);

// Deterministic enumeration of a sub-family of A. Three streams, each ordered
// by its complexity height h: grid elements (centers k/q, h = q), coset grids
// {b + k/q} (h = q + den(b)), and from_points on tuples of up to four
// rationals (h = denominator bound). The streams take turns grid, coset,
// tuple; each turn emits that stream's next element that validates and has
// not been emitted before. The grid stream passes its turn to the coset
// stream while its next height exceeds both other streams' heights.
class IndexEnumerator {
 public:
  IndexEnumerator();
  ~IndexEnumerator();
  IndexEnumerator(IndexEnumerator&&) noexcept;
  IndexEnumerator& operator=(IndexEnumerator&&) noexcept;

  IndexElement next();
  // Largest height any stream has reached.
  std::size_t height() const;

 private:
  struct State;
  std::unique_ptr<State> state_;
};

// First `count` elements of the canonical enumeration.
std::vector<IndexElement> enumerate_index(std::size_t count);

}  // namespace nonrn
