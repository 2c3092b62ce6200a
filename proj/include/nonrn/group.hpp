#pragma once

// Exact arithmetic on the circle group T = R/Z and an algebra of finite
// unions of arcs. Everything is backed by GMP rationals; there is no
// floating point on any path in this header.

#include <gmpxx.h>

#include <compare>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace nonrn {

using Integer = mpz_class;
using Rational = mpq_class;

// Parses "p/q" or "p" (optional leading '-'). Throws MalformedInput naming the
// offending character position.
Rational parse_rational(std::string_view text);
Integer parse_integer(std::string_view text);

// Always "p/q" with q >= 1, lowest terms ("0/1" for zero).
std::string to_string(const Rational& r);

Rational floor_frac(const Rational& r);  // r - floor(r), in [0, 1)
Integer floor_of(const Rational& r);
Integer ceil_of(const Rational& r);

// A point of T, stored as its representative in [0, 1).
class Q1 {
 public:
  Q1() = default;
  explicit Q1(const Rational& value);
  Q1(long num, unsigned long den);

  static Q1 parse(std::string_view text);

  const Rational& value() const { return value_; }
  std::string str() const { return to_string(value_); }
  bool is_zero() const { return sgn(value_) == 0; }

  Q1 operator-() const;
  Q1& operator+=(const Q1& other);
  Q1& operator-=(const Q1& other);
  friend Q1 operator+(Q1 a, const Q1& b) { return a += b; }
  friend Q1 operator-(Q1 a, const Q1& b) { return a -= b; }

  // The continuous endomorphism x -> c*x.
  Q1 times(const Integer& c) const;

  friend bool operator==(const Q1& a, const Q1& b) {
    return a.value_ == b.value_;
  }
  friend std::strong_ordering operator<=>(const Q1& a, const Q1& b) {
    return cmp(a.value_, b.value_) <=> 0;
  }

 private:
  Rational value_;  // canonical: 0 <= value_ < 1
};

// Invariant arc-length metric, valued in [0, 1/2].
Rational dist(const Q1& x, const Q1& y);

// Open arc {x : lo < x < hi} read mod 1, with 0 <= lo < 1 and
// lo < hi <= lo + 1. hi == lo + 1 is the circle minus the point lo.
struct OpenArc {
  Rational lo;
  Rational hi;

  bool contains(const Q1& x) const;
  friend bool operator==(const OpenArc& a, const OpenArc& b) {
    return a.lo == b.lo && a.hi == b.hi;
  }
};

// Closed arc [lo, hi] read mod 1, with 0 <= lo < 1 and lo <= hi < lo + 1.
// lo == hi is a single point.
struct ClosedArc {
  Rational lo;
  Rational hi;

  bool contains(const Q1& x) const;
  bool is_point() const { return lo == hi; }
  friend bool operator==(const ClosedArc& a, const ClosedArc& b) {
    return a.lo == b.lo && a.hi == b.hi;
  }
};

// Open subset of T that is a finite union of arcs. Normal form: the
// connected components, sorted by left endpoint (a component crossing 0 has
// the largest left endpoint and so sits last). The full circle carries no
// arcs and a flag instead.
class Region {
 public:
  Region() = default;

  static Region full();
  // Any lo < hi; lengths above 1 give the full circle.
  static Region arc(const Rational& lo, const Rational& hi);
  static Region from_arcs(std::span<const OpenArc> arcs);

  bool empty() const { return !full_ && arcs_.empty(); }
  bool is_full() const { return full_; }
  const std::vector<OpenArc>& arcs() const { return arcs_; }
  bool contains(const Q1& x) const;
  Rational length() const;

  friend bool operator==(const Region& a, const Region& b) = default;

 private:
  friend class RegionBuilder;
  bool full_ = false;
  std::vector<OpenArc> arcs_;
};

// Closed subset of T that is a finite union of closed arcs and points, in the
// same normal form as Region. Produced by complementing a Region.
class ClosedRegion {
 public:
  ClosedRegion() = default;

  static ClosedRegion full();

  bool empty() const { return !full_ && arcs_.empty(); }
  bool is_full() const { return full_; }
  const std::vector<ClosedArc>& arcs() const { return arcs_; }
  bool contains(const Q1& x) const;

  // Open interior, plus the isolated/boundary points it loses.
  Region interior() const;
  std::vector<Q1> boundary_points() const;

  friend bool operator==(const ClosedRegion& a,
                         const ClosedRegion& b) = default;

 private:
  friend class RegionBuilder;
  bool full_ = false;
  std::vector<ClosedArc> arcs_;
};

Region unite(const Region& a, const Region& b);
Region intersect(const Region& a, const Region& b);
ClosedRegion complement(const Region& r);
Region complement(const ClosedRegion& k);
bool is_subset(const Region& a, const Region& b);
bool covers_circle(const Region& r);

// Rational ball {x : dist(center, x) < radius} (open) or <= radius (closed).
class Ball {
 public:
  Ball(Q1 center, Rational radius, bool open = true);

  const Q1& center() const { return center_; }
  const Rational& radius() const { return radius_; }
  bool is_open() const { return open_; }

  bool contains(const Q1& x) const;
  // Open balls only.
  Region region() const;
  // Closed balls only.
  ClosedRegion closed_region() const;

  friend bool operator==(const Ball& a, const Ball& b) = default;

 private:
  Q1 center_;
  Rational radius_;
  bool open_;
};

// Minkowski sum {u + v : u in a, v in b} of two open balls.
Region ball_sum(const Ball& a, const Ball& b);

}  // namespace nonrn
