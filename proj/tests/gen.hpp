#pragma once

// Small seeded generators shared by the property-style tests.

#include <cstdint>
#include <random>
#include <vector>

#include "nonrn/group.hpp"

namespace gen {

using Engine = std::mt19937_64;

inline long uniform(Engine& eng, long lo, long hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<long>(eng() % span);
}

// p/q with 1 <= q <= max_den, reduced mod 1.
inline nonrn::Q1 q1(Engine& eng, long max_den) {
  const long q = uniform(eng, 1, max_den);
  const long p = uniform(eng, 0, q - 1);
  return nonrn::Q1(p, static_cast<unsigned long>(q));
}

inline nonrn::Rational rational(Engine& eng, long num_lo, long num_hi,
                                long max_den) {
  nonrn::Rational r(uniform(eng, num_lo, num_hi), uniform(eng, 1, max_den));
  r.canonicalize();
  return r;
}

inline std::vector<nonrn::Q1> distinct_q1s(Engine& eng, std::size_t n,
                                           long max_den) {
  std::vector<nonrn::Q1> out;
  while (out.size() < n) {
    nonrn::Q1 x = q1(eng, max_den);
    bool seen = false;
    for (const auto& y : out) seen = seen || y == x;
    if (!seen) out.push_back(x);
  }
  return out;
}

}  // namespace gen
