#include "nonrn/group.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "nonrn/error.hpp"

namespace nonrn {

namespace {

const Rational kHalf(1, 2);

[[noreturn]] void bad_number(std::string_view text, std::size_t pos,
                             const char* what) {
  throw MalformedInput("malformed rational \"" + std::string(text) +
                       "\" at position " + std::to_string(pos) + ": " + what);
}

// Scans an optionally signed run of digits starting at pos.
std::size_t scan_digits(std::string_view text, std::size_t pos, bool signed_ok) {
  if (signed_ok && pos < text.size() && text[pos] == '-') ++pos;
  const std::size_t digits = pos;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
    ++pos;
  if (pos == digits) bad_number(text, pos, "expected digit");
  return pos;
}

}  // namespace

Integer parse_integer(std::string_view text) {
  const std::size_t end = scan_digits(text, 0, true);
  if (end != text.size()) bad_number(text, end, "unexpected character");
  return Integer(std::string(text));
}

Rational parse_rational(std::string_view text) {
  std::size_t pos = scan_digits(text, 0, true);
  Integer num(std::string(text.substr(0, pos)));
  Integer den(1);
  if (pos < text.size()) {
    if (text[pos] != '/') bad_number(text, pos, "expected '/'");
    const std::size_t den_start = pos + 1;
    pos = scan_digits(text, den_start, false);
    if (pos != text.size()) bad_number(text, pos, "unexpected character");
    den = Integer(std::string(text.substr(den_start)));
    if (den == 0) bad_number(text, den_start, "zero denominator");
  }
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Integer floor_of(const Rational& r) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

Integer ceil_of(const Rational& r) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

Rational floor_frac(const Rational& r) {
  if (sgn(r) >= 0 && r < 1) return r;
  Rational out = r - Rational(floor_of(r));
  return out;
}

// --- Q1 ---------------------------------------------------------------------

Q1::Q1(const Rational& value) {
  Rational v(value);
  v.canonicalize();
  value_ = floor_frac(v);
}

Q1::Q1(long num, unsigned long den) {
  if (den == 0) throw MalformedInput("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  value_ = floor_frac(r);
}

Q1 Q1::parse(std::string_view text) { return Q1(parse_rational(text)); }

Q1 Q1::operator-() const {
  Q1 out;
  if (sgn(value_) != 0) out.value_ = 1 - value_;
  return out;
}

Q1& Q1::operator+=(const Q1& other) {
  value_ += other.value_;
  if (value_ >= 1) value_ -= 1;
  return *this;
}

Q1& Q1::operator-=(const Q1& other) {
  value_ -= other.value_;
  if (sgn(value_) < 0) value_ += 1;
  return *this;
}

Q1 Q1::times(const Integer& c) const { return Q1(Rational(value_ * c)); }

Rational dist(const Q1& x, const Q1& y) {
  Rational d = abs(x.value() - y.value());
  if (d > kHalf) d = 1 - d;
  return d;
}

// --- arcs -------------------------------------------------------------------

bool OpenArc::contains(const Q1& x) const {
  const Rational& v = x.value();
  if (lo < v && v < hi) return true;
  return v + 1 < hi;
}

bool ClosedArc::contains(const Q1& x) const {
  const Rational& v = x.value();
  if (lo <= v && v <= hi) return true;
  return v + 1 <= hi;
}

// Rebuilds normal forms from a membership predicate. Boundaries of the
// result must be among `cuts`; membership is then constant on every gap
// between consecutive cuts, so sampling cut points and gap midpoints
// determines the set exactly.
class RegionBuilder {
 public:
  struct Run {
    Rational lo, hi;
    bool lo_in, hi_in;
  };

  template <class In>
  static bool sweep(std::vector<Rational> cuts, In&& in, std::vector<Run>& runs) {
    normalize_cuts(cuts);
    const std::size_t k = cuts.size();
    const std::size_t total = 2 * k;
    std::vector<char> member(total);
    bool all = true;
    std::size_t start = total;
    for (std::size_t e = 0; e < total; ++e) {
      const std::size_t i = e / 2;
      bool m;
      if (e % 2 == 0) {
        m = in(Q1(cuts[i]));
      } else {
        Rational mid = (cuts[i] + next(cuts, i)) / 2;
        m = in(Q1(mid));
      }
      member[e] = m;
      if (!m) {
        all = false;
        if (start == total) start = e;
      }
    }
    runs.clear();
    if (all) return true;

    bool open_run = false;
    Run cur;
    std::size_t prev = start;
    int prev_off = 0;
    for (std::size_t t = 1; t <= total; ++t) {
      const std::size_t raw = start + t;
      const std::size_t e = raw % total;
      const int off = raw >= total ? 1 : 0;
      const std::size_t i = e / 2;
      if (member[e] && !open_run) {
        open_run = true;
        cur.lo = cuts[i] + off;
        cur.lo_in = e % 2 == 0;
      } else if (!member[e] && open_run) {
        open_run = false;
        const std::size_t pi = prev / 2;
        if (prev % 2 == 0) {
          cur.hi = cuts[pi] + prev_off;
          cur.hi_in = true;
        } else {
          cur.hi = next(cuts, pi) + prev_off;
          cur.hi_in = false;
        }
        if (cur.lo >= 1) {
          cur.lo -= 1;
          cur.hi -= 1;
        }
        runs.push_back(cur);
      }
      prev = e;
      prev_off = off;
    }
    std::sort(runs.begin(), runs.end(),
              [](const Run& a, const Run& b) { return a.lo < b.lo; });
    return false;
  }

  template <class In>
  static Region open(std::vector<Rational> cuts, In&& in) {
    std::vector<Run> runs;
    Region out;
    if (sweep(std::move(cuts), in, runs)) {
      out.full_ = true;
      return out;
    }
    for (auto& r : runs) {
      if (r.lo_in || r.hi_in)
        throw std::logic_error("open region sweep produced a closed endpoint");
      out.arcs_.push_back(OpenArc{std::move(r.lo), std::move(r.hi)});
    }
    return out;
  }

  template <class In>
  static ClosedRegion closed(std::vector<Rational> cuts, In&& in) {
    std::vector<Run> runs;
    ClosedRegion out;
    if (sweep(std::move(cuts), in, runs)) {
      out.full_ = true;
      return out;
    }
    for (auto& r : runs) {
      if (!r.lo_in || !r.hi_in)
        throw std::logic_error("closed region sweep produced an open endpoint");
      out.arcs_.push_back(ClosedArc{std::move(r.lo), std::move(r.hi)});
    }
    return out;
  }

  template <class In>
  static bool all_samples(std::vector<Rational> cuts, In&& pred) {
    normalize_cuts(cuts);
    for (std::size_t i = 0; i < cuts.size(); ++i) {
      if (!pred(Q1(cuts[i]))) return false;
      if (!pred(Q1(Rational((cuts[i] + next(cuts, i)) / 2)))) return false;
    }
    return true;
  }

  static void add_cuts(std::vector<Rational>& cuts, const Region& r) {
    for (const auto& a : r.arcs()) {
      cuts.push_back(a.lo);
      cuts.push_back(floor_frac(a.hi));
    }
  }
  static void add_cuts(std::vector<Rational>& cuts, const ClosedRegion& r) {
    for (const auto& a : r.arcs()) {
      cuts.push_back(a.lo);
      cuts.push_back(floor_frac(a.hi));
    }
  }

 private:
  static void normalize_cuts(std::vector<Rational>& cuts) {
    if (cuts.empty()) cuts.emplace_back(0);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  }

  static Rational next(const std::vector<Rational>& cuts, std::size_t i) {
    return i + 1 < cuts.size() ? cuts[i + 1] : Rational(cuts[0] + 1);
  }
};

// --- Region -----------------------------------------------------------------

Region Region::full() {
  Region r;
  r.full_ = true;
  return r;
}

Region Region::arc(const Rational& lo, const Rational& hi) {
  Rational a(lo), b(hi);
  a.canonicalize();
  b.canonicalize();
  if (!(a < b)) throw std::invalid_argument("Region::arc needs lo < hi");
  if (b - a > 1) return full();
  Region r;
  Rational shift(floor_of(a));
  r.arcs_.push_back(OpenArc{a - shift, b - shift});
  return r;
}

Region Region::from_arcs(std::span<const OpenArc> arcs) {
  std::vector<Region> parts;
  std::vector<Rational> cuts;
  for (const auto& a : arcs) {
    Region r = arc(a.lo, a.hi);
    if (r.is_full()) return r;
    RegionBuilder::add_cuts(cuts, r);
    parts.push_back(std::move(r));
  }
  if (parts.empty()) return Region();
  return RegionBuilder::open(std::move(cuts), [&](const Q1& x) {
    return std::any_of(parts.begin(), parts.end(), [&](const Region& r) { return r.contains(x); });
  });
}

bool Region::contains(const Q1& x) const {
  if (full_) return true;
  return std::any_of(arcs_.begin(), arcs_.end(),
                     [&](const OpenArc& a) { return a.contains(x); });
}

Rational Region::length() const {
  if (full_) return Rational(1);
  Rational total(0);
  for (const auto& a : arcs_) total += a.hi - a.lo;
  return total;
}

// --- ClosedRegion -----------------------------------------------------------

ClosedRegion ClosedRegion::full() {
  ClosedRegion r;
  r.full_ = true;
  return r;
}

bool ClosedRegion::contains(const Q1& x) const {
  if (full_) return true;
  return std::any_of(arcs_.begin(), arcs_.end(),
                     [&](const ClosedArc& a) { return a.contains(x); });
}

Region ClosedRegion::interior() const {
  if (full_) return Region::full();
  std::vector<OpenArc> open;
  for (const auto& a : arcs_)
    if (!a.is_point()) open.push_back(OpenArc{a.lo, a.hi});
  return Region::from_arcs(open);
}

std::vector<Q1> ClosedRegion::boundary_points() const {
  std::vector<Q1> pts;
  for (const auto& a : arcs_) {
    pts.emplace_back(a.lo);
    if (!a.is_point()) pts.emplace_back(a.hi);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

// --- set operations ---------------------------------------------------------

Region unite(const Region& a, const Region& b) {
  if (a.is_full() || b.is_full()) return Region::full();
  if (a.empty()) return b;
  if (b.empty()) return a;
  std::vector<Rational> cuts;
  RegionBuilder::add_cuts(cuts, a);
  RegionBuilder::add_cuts(cuts, b);
  return RegionBuilder::open(std::move(cuts), [&](const Q1& x) {
    return a.contains(x) || b.contains(x);
  });
}

Region intersect(const Region& a, const Region& b) {
  if (a.empty() || b.empty()) return Region{};
  if (a.is_full()) return b;
  if (b.is_full()) return a;
  std::vector<Rational> cuts;
  RegionBuilder::add_cuts(cuts, a);
  RegionBuilder::add_cuts(cuts, b);
  return RegionBuilder::open(std::move(cuts), [&](const Q1& x) {
    return a.contains(x) && b.contains(x);
  });
}

ClosedRegion complement(const Region& r) {
  if (r.is_full()) return ClosedRegion{};
  if (r.empty()) return ClosedRegion::full();
  std::vector<Rational> cuts;
  RegionBuilder::add_cuts(cuts, r);
  return RegionBuilder::closed(std::move(cuts),
                               [&](const Q1& x) { return !r.contains(x); });
}

Region complement(const ClosedRegion& k) {
  if (k.is_full()) return Region{};
  if (k.empty()) return Region::full();
  std::vector<Rational> cuts;
  RegionBuilder::add_cuts(cuts, k);
  return RegionBuilder::open(std::move(cuts),
                             [&](const Q1& x) { return !k.contains(x); });
}

bool is_subset(const Region& a, const Region& b) {
  if (a.empty() || b.is_full()) return true;
  if (b.empty()) return false;
  std::vector<Rational> cuts;
  RegionBuilder::add_cuts(cuts, a);
  RegionBuilder::add_cuts(cuts, b);
  return RegionBuilder::all_samples(std::move(cuts), [&](const Q1& x) {
    return !a.contains(x) || b.contains(x);
  });
}

bool covers_circle(const Region& r) { return r.is_full(); }

// --- balls ------------------------------------------------------------------

Ball::Ball(Q1 center, Rational radius, bool open)
    : center_(std::move(center)), radius_(std::move(radius)), open_(open) {
  radius_.canonicalize();
  if (sgn(radius_) <= 0)
    throw MalformedInput("ball radius must be positive, got " +
                         to_string(radius_));
  if (radius_ > kHalf)
    throw MalformedInput("ball radius must be at most 1/2, got " +
                         to_string(radius_));
}

bool Ball::contains(const Q1& x) const {
  const Rational d = dist(center_, x);
  return open_ ? d < radius_ : d <= radius_;
}

Region Ball::region() const {
  if (!open_) throw std::logic_error("Ball::region on a closed ball");
  return Region::arc(center_.value() - radius_, center_.value() + radius_);
}

ClosedRegion Ball::closed_region() const {
  if (open_) throw std::logic_error("Ball::closed_region on an open ball");
  if (radius_ == kHalf) return ClosedRegion::full();
  return complement(Region::arc(center_.value() + radius_,
                                center_.value() - radius_ + 1));
}

Region ball_sum(const Ball& a, const Ball& b) {
  if (!a.is_open() || !b.is_open())
    throw std::logic_error("ball_sum expects open balls");
  const Rational r = a.radius() + b.radius();
  if (r > kHalf) return Region::full();
  const Rational c = (a.center() + b.center()).value();
  // r == 1/2 yields the length-1 arc, i.e. T minus the antipode of c.
  return Region::arc(c - r, c + r);
}

}  // namespace nonrn
