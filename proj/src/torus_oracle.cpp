// Exhaustive bounded-denominator search used to cross-check the Smith-form
// solver. Works over the common denominator L = lcm(1..max_den) in 128-bit
// integers and shares no code with solve_torus_system.

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "nonrn/linsolve.hpp"

namespace nonrn {

namespace {

using i128 = __int128;

i128 lcm_upto(long max_den) {
  i128 l = 1;
  for (long d = 2; d <= max_den; ++d) {
    const i128 g = std::gcd(static_cast<long long>(l % d), static_cast<long long>(d));
    l = l / g * d;
    if (l > (static_cast<i128>(1) << 100))
      throw std::invalid_argument("brute_force_torus_solution: denominator bound too large");
  }
  return l;
}

i128 mod(i128 a, i128 l) {
  a %= l;
  return a < 0 ? a + l : a;
}

struct Search {
  const LinearSystem& sys;
  i128 l;
  std::vector<std::vector<std::pair<i128, Q1>>> candidates;
  std::vector<std::vector<i128>> coef;  // coef[i][k]
  std::vector<i128> target;
  std::vector<Q1> chosen;

  bool run(std::size_t k, std::vector<i128>& partial) {
    const std::size_t n = candidates.size();
    if (k == n) {
      for (std::size_t i = 0; i < partial.size(); ++i)
        if (mod(partial[i], l) != target[i]) return false;
      return true;
    }
    for (const auto& [num, q] : candidates[k]) {
      for (std::size_t i = 0; i < partial.size(); ++i) partial[i] += coef[i][k] * num;
      chosen[k] = q;
      const bool hit = run(k + 1, partial);
      for (std::size_t i = 0; i < partial.size(); ++i) partial[i] -= coef[i][k] * num;
      if (hit) return true;
    }
    return false;
  }
};

}  // namespace

std::optional<std::vector<Q1>> brute_force_torus_solution(const LinearSystem& sys,
                                                          long max_den) {
  sys.check();
  const std::size_t m = sys.coefficients.rows(), n = sys.coefficients.cols();
  const i128 l = lcm_upto(max_den);

  std::vector<std::pair<long, long>> fractions;  // (p, q), p/q in [0, 1)
  for (long q = 1; q <= max_den; ++q)
    for (long p = 0; p < q; ++p)
      if (std::gcd(p, q) == 1) fractions.emplace_back(p, q);
  std::sort(fractions.begin(), fractions.end(), [](const auto& a, const auto& b) {
    return a.first * b.second < b.first * a.second;
  });

  Search s{sys, l, {}, {}, {}, std::vector<Q1>(n)};
  s.candidates.resize(n);
  for (std::size_t k = 0; k < n; ++k)
    for (const auto& [p, q] : fractions) {
      const Q1 x(p, static_cast<unsigned long>(q));
      if (sys.constraints[k].contains(x)) s.candidates[k].emplace_back(l / q * p, x);
    }

  s.coef.assign(m, std::vector<i128>(n));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (!sys.coefficients(i, k).fits_slong_p())
        throw std::invalid_argument("brute_force_torus_solution: coefficient too large");
      s.coef[i][k] = sys.coefficients(i, k).get_si();
    }

  s.target.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const Rational& r = sys.constants[i].value();
    if (!r.get_den().fits_slong_p()) return std::nullopt;
    const long den = r.get_den().get_si();
    // Sums of fractions with denominators <= max_den have denominators
    // dividing L.
    if (l % den != 0) return std::nullopt;
    s.target[i] = l / den * static_cast<i128>(r.get_num().get_si());
  }

  std::vector<i128> partial(m, 0);
  if (!s.run(0, partial)) return std::nullopt;
  return s.chosen;
}

}  // namespace nonrn
