#include <algorithm>

#include "doctest.h"
#include "gen.hpp"
#include "nonrn/error.hpp"
#include "nonrn/ideal.hpp"

using namespace nonrn;

namespace {

Rational r(long p, long d) {
  Rational x(p, d);
  x.canonicalize();
  return x;
}

IndexElement single(Q1 c, Rational rad) {
  IndexElement a;
  a.balls.emplace_back(c, rad);
  a.points.push_back(c);
  return a;
}

IndexElement a0() {
  IndexElement a;
  a.balls.emplace_back(Q1(0, 1), r(1, 8));
  a.balls.emplace_back(Q1(1, 2), r(1, 8));
  a.points = {Q1(0, 1), Q1(1, 2)};
  return a;
}

IndexElement a1() { return single(Q1(0, 1), r(3, 8)); }
IndexElement a2() { return single(Q1(1, 2), r(5, 32)); }

std::vector<IndexElement> pick(gen::Engine& eng, const std::vector<IndexElement>& pool,
                               std::size_t max_size) {
  const auto size = static_cast<std::size_t>(gen::uniform(eng, 0, static_cast<long>(max_size)));
  std::vector<IndexElement> out;
  for (std::size_t i = 0; i < size; ++i)
    out.push_back(pool[static_cast<std::size_t>(gen::uniform(eng, 0, static_cast<long>(pool.size()) - 1))]);
  return out;
}

// Tries every witness of the given size drawn from the 1/grid lattice.
bool lattice_witness_exists(const std::vector<IndexElement>& x, std::size_t size, long grid,
                            std::vector<Q1>& u, long from = 0) {
  if (u.size() == size) return check_witness(u, x);
  for (long i = from; i < grid; ++i) {
    u.emplace_back(i, static_cast<unsigned long>(grid));
    if (lattice_witness_exists(x, size, grid, u, i + 1)) return true;
    u.pop_back();
  }
  return false;
}

}  // namespace

TEST_CASE("check_witness examples") {
  const std::vector<IndexElement> x{a0()};
  const std::vector<Q1> quarter{Q1(1, 4)};
  CHECK(check_witness(quarter, x));
  CHECK_FALSE(check_witness(std::vector<Q1>{}, x));
  CHECK(check_witness(std::vector<Q1>{}, std::vector<IndexElement>{}));
  // Boundary points of open balls are outside.
  CHECK(check_witness(std::vector<Q1>{Q1(1, 8)}, x));
  CHECK_FALSE(check_witness(std::vector<Q1>{Q1(1, 16)}, x));
}

TEST_CASE("pierce examples") {
  const auto empty = pierce_number(std::vector<IndexElement>{});
  CHECK(empty.size == 0);
  CHECK(empty.witness.empty());

  const std::vector<IndexElement> one{a0()};
  const auto p0 = pierce_number(one);
  CHECK(p0.size == 1);
  CHECK(p0.certificate == Certificate::kExact);
  CHECK(p0.witness == std::vector<Q1>{Q1(1, 8)});

  const std::vector<IndexElement> two{a1(), a2()};
  const auto p12 = pierce_number(two);
  CHECK(p12.size == 2);
  CHECK(p12.witness == std::vector<Q1>{Q1(0, 1), Q1(3, 8)});
  CHECK(check_witness(p12.witness, two));
  CHECK(check_witness(std::vector<Q1>{Q1(0, 1), Q1(1, 2)}, two));
}

TEST_CASE("partition oracle examples") {
  CHECK(pierce_by_partition(std::vector<IndexElement>{}, 3) == 0u);
  CHECK(pierce_by_partition(std::vector<IndexElement>{a0()}, 3) == 1u);
  CHECK(pierce_by_partition(std::vector<IndexElement>{a1(), a2()}, 3) == 2u);
  CHECK_FALSE(pierce_by_partition(std::vector<IndexElement>{a1(), a2()}, 1).has_value());
  CHECK_THROWS_AS(pierce_by_partition(std::vector<IndexElement>(13, a0()), 3), SizeLimitExceeded);
}

TEST_CASE("size limit and heuristic fallback") {
  const auto prefix = enumerate_index(40);
  PierceOptions tight;
  tight.exact_limit = 10;
  CHECK_THROWS_AS(pierce_number(prefix, tight), SizeLimitExceeded);
  tight.allow_heuristic = true;
  const auto h = pierce_number(prefix, tight);
  CHECK(h.certificate == Certificate::kHeuristic);
  CHECK(check_witness(h.witness, prefix));
  const auto exact = pierce_number(prefix);
  CHECK(exact.certificate == Certificate::kExact);
  CHECK(exact.size <= h.size);
}

TEST_CASE("ideal laws on the canonical prefix") {
  const auto pool = enumerate_index(50);
  gen::Engine eng(11);
  for (const auto& a : pool) {
    const std::vector<IndexElement> x{a};
    const auto p = pierce_number(x);
    CHECK(p.size == 1);
    CHECK(check_witness(p.witness, x));
  }
  for (int t = 0; t < 100; ++t) {
    const auto x = pick(eng, pool, 8);
    const auto y = pick(eng, pool, 8);
    std::vector<IndexElement> xy = x;
    xy.insert(xy.end(), y.begin(), y.end());
    const auto px = pierce_number(x), py = pierce_number(y), pxy = pierce_number(xy);
    CHECK(pxy.size >= std::max(px.size, py.size));
    CHECK(pxy.size <= px.size + py.size);
    std::vector<Q1> w = px.witness;
    w.insert(w.end(), py.witness.begin(), py.witness.end());
    CHECK(check_witness(w, xy));
    CHECK(check_witness(pxy.witness, xy));
    CHECK(std::is_sorted(pxy.witness.begin(), pxy.witness.end()));
  }
}

TEST_CASE("pierce agrees with the partition oracle") {
  const auto pool = enumerate_index(200);
  gen::Engine eng(23);
  for (int t = 0; t < 50; ++t) {
    const auto x = pick(eng, pool, 10);
    const auto p = pierce_number(x);
    CHECK(check_witness(p.witness, x));
    CHECK(p.witness.size() == p.size);
    CHECK(pierce_by_partition(x, 10) == p.size);
  }
}

TEST_CASE("minimality against a lattice search") {
  // Random single-ball elements with endpoints on the 1/32 grid; every
  // candidate lies on that grid, so a lattice search is exhaustive.
  gen::Engine eng(5);
  for (int t = 0; t < 40; ++t) {
    std::vector<IndexElement> x;
    const long count = gen::uniform(eng, 1, 7);
    for (long i = 0; i < count; ++i)
      x.push_back(single(Q1(gen::uniform(eng, 0, 31), 32), r(gen::uniform(eng, 1, 15), 32)));
    const auto p = pierce_number(x);
    std::vector<Q1> u;
    CHECK(lattice_witness_exists(x, p.size, 32, u));
    u.clear();
    if (p.size > 0) CHECK_FALSE(lattice_witness_exists(x, p.size - 1, 32, u));
  }
}

TEST_CASE("escape witness covers u") {
  gen::Engine eng(3);
  for (int t = 0; t < 100; ++t) {
    const auto size = static_cast<std::size_t>(gen::uniform(eng, 0, 4));
    std::vector<Q1> u;
    for (std::size_t i = 0; i < size; ++i) u.push_back(gen::q1(eng, 64));
    const IndexElement a = escape_witness(u);
    CHECK(validate(a).ok());
    for (const auto& p : u) CHECK(a.support_contains(p));
    CHECK_FALSE(check_witness(u, std::vector<IndexElement>{a}));
  }
}

TEST_CASE("ideal trend") {
  const auto prefix = enumerate_index(400);
  const std::vector<std::size_t> marks{50, 100, 200, 400};

  const auto none = ideal_trend(prefix, [](std::size_t, const IndexElement&) { return false; },
                                marks);
  CHECK(none.bounded_looking);
  for (const auto& c : none.checkpoints) CHECK(c.pierce == 0);

  const auto tiny = ideal_trend(
      prefix, [](std::size_t, const IndexElement& a) { return a.support().length() < r(1, 8); },
      marks);
  CHECK(tiny.bounded_looking);
  for (const auto& c : tiny.checkpoints) CHECK(c.pierce <= 1);

  const auto all = ideal_trend(prefix, [](std::size_t, const IndexElement&) { return true; },
                               marks, {}, 1);
  const auto all4 = ideal_trend(prefix, [](std::size_t, const IndexElement&) { return true; },
                                marks, {}, 4);
  REQUIRE(all.checkpoints.size() == marks.size());
  for (std::size_t i = 0; i < marks.size(); ++i) {
    CHECK(all.checkpoints[i].m == marks[i]);
    CHECK(all.checkpoints[i].pierce == all4.checkpoints[i].pierce);
    if (i > 0) CHECK(all.checkpoints[i].pierce >= all.checkpoints[i - 1].pierce);
  }
}
