#include <algorithm>

#include "doctest.h"
#include "gen.hpp"
#include "nonrn/error.hpp"
#include "nonrn/group.hpp"

using namespace nonrn;

namespace {

Q1 q(long p, unsigned long d) { return Q1(p, d); }
Rational r(long p, long d) {
  Rational x(p, d);
  x.canonicalize();
  return x;
}
Ball arc(Q1 c, Rational rad) { return Ball(std::move(c), std::move(rad)); }

// Brute-force Minkowski membership. With every endpoint on the 1/N grid, z is
// in the open sum iff some u on the 1/(2N) grid has u in a and z - u in b.
bool sum_oracle(const Ball& a, const Ball& b, const Q1& z, long grid) {
  for (long i = 0; i < 2 * grid; ++i) {
    const Q1 u(i, static_cast<unsigned long>(2 * grid));
    if (a.contains(u) && b.contains(z - u)) return true;
  }
  return false;
}

// Walks the 1/(2N) grid and reports whether every sample lies in some arc.
bool sweep_covers(const std::vector<Ball>& balls, long grid) {
  for (long i = 0; i < 2 * grid; ++i) {
    const Q1 x(i, static_cast<unsigned long>(2 * grid));
    if (std::none_of(balls.begin(), balls.end(),
                     [&](const Ball& b) { return b.contains(x); }))
      return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("q1") {
  TEST_CASE("addition examples") {
    CHECK(q(1, 2) + q(2, 3) == q(1, 6));
    CHECK(Q1() + q(5, 7) == q(5, 7));
    CHECK(q(3, 4) + q(1, 4) == Q1());
    CHECK(-Q1() == Q1());
    CHECK(q(1, 3) - q(2, 3) == q(2, 3));
  }

  TEST_CASE("canonical form") {
    CHECK(Q1(r(7, 3)).value() == r(1, 3));
    CHECK(Q1(r(-1, 4)).value() == r(3, 4));
    CHECK(Q1(Rational(-3)).value() == 0);
    const Q1 x(r(13, 6));
    CHECK(Q1(x.value()) == x);
    CHECK(x.str() == "1/6");
    CHECK(Q1().str() == "0/1");
  }

  TEST_CASE("parse rejects malformed text with a position") {
    CHECK(Q1::parse("3/4") == q(3, 4));
    CHECK(Q1::parse("5/4") == q(1, 4));
    CHECK(Q1::parse("-1/3") == q(2, 3));
    CHECK(Q1::parse("2") == Q1());
    CHECK_THROWS_AS(Q1::parse("1/0"), MalformedInput);
    CHECK_THROWS_AS(Q1::parse(""), MalformedInput);
    CHECK_THROWS_AS(Q1::parse("1/2x"), MalformedInput);
    try {
      Q1::parse("12/a");
      FAIL("expected throw");
    } catch (const MalformedInput& e) {
      CHECK(std::string(e.what()).find("position 3") != std::string::npos);
    }
  }

  TEST_CASE("group laws on random rationals") {
    gen::Engine eng(11);
    for (int t = 0; t < 500; ++t) {
      const Q1 x = gen::q1(eng, 1000000), y = gen::q1(eng, 1000000),
               z = gen::q1(eng, 1000000);
      CHECK((x + y) + z == x + (y + z));
      CHECK(x + y == y + x);
      CHECK(x + Q1() == x);
      CHECK(x + (-x) == Q1());
      CHECK(x - y == x + (-y));
    }
  }

  TEST_CASE("multiplier endomorphism") {
    CHECK(q(1, 5).times(3) == q(3, 5));
    CHECK(q(1, 5).times(-1) == q(4, 5));
    CHECK(q(2, 5).times(5) == Q1());
  }
}

TEST_SUITE("metric") {
  TEST_CASE("examples") {
    CHECK(dist(Q1(), q(3, 4)) == r(1, 4));
    CHECK(dist(q(1, 8), q(7, 8)) == r(1, 4));
    CHECK(dist(q(2, 9), q(2, 9)) == 0);
  }

  TEST_CASE("symmetry, triangle inequality and invariance") {
    gen::Engine eng(12);
    for (int t = 0; t < 500; ++t) {
      const Q1 x = gen::q1(eng, 1000), y = gen::q1(eng, 1000),
               z = gen::q1(eng, 1000), s = gen::q1(eng, 1000);
      CHECK(dist(x, y) == dist(y, x));
      CHECK(dist(x, z) <= dist(x, y) + dist(y, z));
      CHECK(dist(x + s, y + s) == dist(x, y));
      CHECK(dist(x, y) <= r(1, 2));
    }
  }
}

TEST_SUITE("ball_sum") {
  TEST_CASE("examples") {
    CHECK(ball_sum(arc(Q1(), r(1, 8)), arc(q(1, 2), r(1, 8))) ==
          arc(q(1, 2), r(1, 4)).region());
    CHECK(ball_sum(arc(q(1, 3), r(1, 8)), arc(Q1(), r(1, 16))) ==
          arc(q(1, 3), r(3, 16)).region());
    CHECK(ball_sum(arc(Q1(), r(3, 8)), arc(Q1(), r(3, 8))).is_full());
  }

  TEST_CASE("radius one half leaves out the antipode only") {
    const Region s = ball_sum(arc(q(1, 8), r(1, 4)), arc(q(1, 8), r(1, 4)));
    CHECK_FALSE(s.is_full());
    CHECK_FALSE(s.contains(q(3, 4)));
    CHECK(s.contains(q(3, 4) + q(1, 1000000)));
    CHECK(s.length() == 1);
  }

  TEST_CASE("agrees with the pointwise grid oracle") {
    gen::Engine eng(13);
    for (int t = 0; t < 200; ++t) {
      const Ball a = arc(q(gen::uniform(eng, 0, 63), 64),
                         r(gen::uniform(eng, 1, 32), 64));
      const Ball b = arc(q(gen::uniform(eng, 0, 63), 64),
                         r(gen::uniform(eng, 1, 32), 64));
      const Region s = ball_sum(a, b);
      for (long k = 0; k < 64; ++k) {
        const Q1 z(k, 64);
        REQUIRE(s.contains(z) == sum_oracle(a, b, z, 64));
      }
    }
  }
}

TEST_SUITE("regions") {
  TEST_CASE("cover examples") {
    const Region a = unite(arc(Q1(), r(3, 8)).region(),
                           arc(q(1, 2), r(3, 8)).region());
    CHECK(covers_circle(a));
    CHECK(sweep_covers({arc(Q1(), r(3, 8)), arc(q(1, 2), r(3, 8))}, 64));

    const Region a0 = unite(arc(Q1(), r(1, 8)).region(),
                            arc(q(1, 2), r(1, 8)).region());
    CHECK_FALSE(covers_circle(a0));
    CHECK_FALSE(a0.contains(q(1, 4)));
    CHECK_FALSE(sweep_covers({arc(Q1(), r(1, 8)), arc(q(1, 2), r(1, 8))}, 64));
    CHECK_FALSE(covers_circle(Region{}));
  }

  TEST_CASE("touching open arcs keep the shared endpoint out") {
    const Region u = unite(Region::arc(Rational(0), r(1, 2)),
                           Region::arc(r(1, 2), Rational(1)));
    CHECK_FALSE(u.is_full());
    CHECK(u.arcs().size() == 2);
    CHECK_FALSE(u.contains(q(1, 2)));
    CHECK_FALSE(u.contains(Q1()));
    const Region w = unite(u, Region::arc(r(1, 4), r(3, 4)));
    CHECK(w.arcs().size() == 1);
    CHECK(w.arcs()[0] == OpenArc{Rational(0), Rational(1)});
  }

  TEST_CASE("wraparound component is stored last") {
    const Region u = unite(Region::arc(r(-1, 8), r(1, 8)),
                           Region::arc(r(1, 4), r(1, 2)));
    REQUIRE(u.arcs().size() == 2);
    CHECK(u.arcs()[0] == OpenArc{r(1, 4), r(1, 2)});
    CHECK(u.arcs()[1] == OpenArc{r(7, 8), r(9, 8)});
    CHECK(u.contains(Q1()));
  }

  TEST_CASE("complement of an open arc is a closed arc") {
    const ClosedRegion k = complement(Region::arc(r(1, 4), r(3, 4)));
    REQUIRE(k.arcs().size() == 1);
    CHECK(k.arcs()[0] == ClosedArc{r(3, 4), r(5, 4)});
    CHECK(k.contains(q(1, 4)));
    CHECK(k.contains(Q1()));
    CHECK_FALSE(k.contains(q(1, 2)));

    const ClosedRegion pt = complement(Region::arc(r(1, 3), r(4, 3)));
    REQUIRE(pt.arcs().size() == 1);
    CHECK(pt.arcs()[0].is_point());
    CHECK(pt.interior().empty());
    CHECK(pt.boundary_points() == std::vector<Q1>{q(1, 3)});
  }

  TEST_CASE("closed balls") {
    const Ball c(q(1, 4), r(1, 16), false);
    CHECK(c.contains(q(5, 16)));
    CHECK_FALSE(Ball(q(1, 4), r(1, 16)).contains(q(5, 16)));
    CHECK(c.closed_region().arcs()[0] == ClosedArc{r(3, 16), r(5, 16)});
    CHECK(Ball(Q1(), r(1, 2), false).closed_region().is_full());
    CHECK_THROWS_AS(Ball(Q1(), Rational(0)), MalformedInput);
    CHECK_THROWS_AS(Ball(Q1(), r(3, 4)), MalformedInput);
  }

  TEST_CASE("normal form is independent of input order") {
    gen::Engine eng(14);
    for (int t = 0; t < 100; ++t) {
      std::vector<OpenArc> arcs;
      const long count = gen::uniform(eng, 1, 6);
      for (long i = 0; i < count; ++i) {
        const Rational lo = gen::rational(eng, 0, 31, 32);
        arcs.push_back(OpenArc{lo, lo + gen::rational(eng, 1, 8, 32)});
      }
      const Region fwd = Region::from_arcs(arcs);
      std::reverse(arcs.begin(), arcs.end());
      const Region rev = Region::from_arcs(arcs);
      CHECK(fwd == rev);

      const Region other = Region::from_arcs(std::vector<OpenArc>{
          OpenArc{Rational(gen::uniform(eng, 0, 15), 16), Rational(1)}});
      CHECK(intersect(fwd, other) == intersect(other, fwd));
      CHECK(unite(fwd, other) == unite(other, fwd));
    }
  }

  TEST_CASE("double complement and grid membership") {
    gen::Engine eng(15);
    for (int t = 0; t < 100; ++t) {
      std::vector<OpenArc> arcs;
      const long count = gen::uniform(eng, 0, 5);
      for (long i = 0; i < count; ++i) {
        const Rational lo(gen::uniform(eng, 0, 63), 64);
        arcs.push_back(OpenArc{lo, lo + Rational(gen::uniform(eng, 1, 40), 64)});
      }
      const Region reg = Region::from_arcs(arcs);
      const ClosedRegion k = complement(reg);
      CHECK(complement(k) == reg);
      for (long i = 0; i < 128; ++i) {
        const Q1 x(i, 128);
        const bool in_some = std::any_of(
            arcs.begin(), arcs.end(), [&](const OpenArc& a) {
              return Region::arc(a.lo, a.hi).contains(x);
            });
        REQUIRE(reg.contains(x) == in_some);
        REQUIRE(k.contains(x) == !in_some);
      }
      CHECK(is_subset(intersect(reg, reg), reg));
      CHECK(is_subset(reg, unite(reg, Region::arc(Rational(0), r(1, 7)))));
    }
  }

  TEST_CASE("subset") {
    CHECK(is_subset(Region::arc(r(1, 8), r(1, 4)), Region::arc(r(0, 1), r(1, 4))));
    CHECK_FALSE(is_subset(Region::arc(r(1, 8), r(1, 4)),
                          Region::arc(r(0, 1), r(3, 16))));
    CHECK(is_subset(Region{}, Region{}));
    CHECK_FALSE(is_subset(Region::full(), Region::arc(r(0, 1), r(1, 1))));
  }
}
