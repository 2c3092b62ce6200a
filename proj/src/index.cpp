#include "nonrn/index.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

#include "nonrn/error.hpp"

namespace nonrn {

Region IndexElement::support() const {
  std::vector<OpenArc> arcs;
  arcs.reserve(balls.size());
  for (const auto& b : balls) {
    const Region r = b.region();
    arcs.insert(arcs.end(), r.arcs().begin(), r.arcs().end());
  }
  return Region::from_arcs(arcs);
}

bool IndexElement::support_contains(const Q1& x) const {
  return locate(x).has_value();
}

std::optional<std::size_t> IndexElement::locate(const Q1& x) const {
  for (std::size_t i = 0; i < balls.size(); ++i)
    if (balls[i].contains(x)) return i;
  return std::nullopt;
}

std::string to_string(Clause c) {
  switch (c) {
    case Clause::kOk: return "ok";
    case Clause::kStructure: return "structure";
    case Clause::kOverlap: return "overlap";
    case Clause::kNotProper: return "not-proper";
    case Clause::kPointOutside: return "point-outside";
    case Clause::kAdditivity: return "additivity";
  }
  return "unknown";
}

namespace {

// Balls sorted by center, for finding every ball that meets a given arc.
class BallIndex {
 public:
  explicit BallIndex(const std::vector<Ball>& balls) : balls_(balls), order_(balls.size()) {
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    std::sort(order_.begin(), order_.end(), [&](std::size_t x, std::size_t y) {
      return balls_[x].center() < balls_[y].center();
    });
    for (std::size_t k : order_) {
      centers_.push_back(balls_[k].center().value());
      if (balls_[k].radius() > max_radius_) max_radius_ = balls_[k].radius();
    }
  }

  // Indices, ascending, of balls meeting the open arc of radius `radius`
  // (below 1/2) around c. Open arcs meet iff their centers are closer than
  // the sum of the radii.
  std::vector<std::size_t> meeting(const Q1& c, const Rational& radius) const {
    const std::size_t n = order_.size();
    const Rational reach = radius + max_radius_;
    const auto start = static_cast<std::size_t>(
        std::lower_bound(centers_.begin(), centers_.end(), c.value()) - centers_.begin());
    std::vector<std::size_t> out;
    auto visit = [&](std::size_t pos, const Rational& gap) {
      if (gap >= reach) return false;
      const std::size_t k = order_[pos % n];
      if (dist(c, balls_[k].center()) < radius + balls_[k].radius()) out.push_back(k);
      return true;
    };
    for (std::size_t t = 0; t < n; ++t) {
      const std::size_t pos = (start + t) % n;
      Rational gap = centers_[pos] - c.value();
      if (gap < 0) gap += 1;
      if (!visit(pos, gap)) break;
    }
    for (std::size_t t = 1; t <= n; ++t) {
      const std::size_t pos = (start + n - t) % n;
      Rational gap = c.value() - centers_[pos];
      if (gap < 0) gap += 1;
      if (!visit(pos, gap)) break;
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

 private:
  const std::vector<Ball>& balls_;
  std::vector<std::size_t> order_;
  std::vector<Rational> centers_;
  Rational max_radius_{0};
};

}  // namespace

Validation validate(const IndexElement& a) {
  Validation v;
  auto fail = [&](Clause c, std::size_t i, std::size_t j) {
    v.clause = c;
    v.i = i;
    v.j = j;
    return v;
  };

  const std::size_t n = a.balls.size();
  if (n == 0 || a.points.size() != n) return fail(Clause::kStructure, 0, 0);
  for (std::size_t i = 0; i < n; ++i)
    if (!a.balls[i].is_open()) return fail(Clause::kStructure, i, i);

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (dist(a.balls[i].center(), a.balls[j].center()) <
          a.balls[i].radius() + a.balls[j].radius())
        return fail(Clause::kOverlap, i, j);

  if (covers_circle(a.support())) return fail(Clause::kNotProper, 0, 0);

  for (std::size_t i = 0; i < n; ++i)
    if (!a.balls[i].contains(a.points[i])) return fail(Clause::kPointOutside, i, i);

  // With disjoint balls, (U_i + U_j) n U lies inside U_k iff U_k is the only
  // ball the sum meets. The sum is symmetric in (i, j), so the first failure
  // in the full (i, j) scan always has i <= j.
  const BallIndex index(a.balls);
  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), std::size_t{0});
  const Rational half(1, 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const Rational radius = a.balls[i].radius() + a.balls[j].radius();
      // From radius 1/2 on, the sum misses at most one point, so it meets
      // every ball.
      const std::vector<std::size_t> hit =
          radius >= half ? all : index.meeting(a.balls[i].center() + a.balls[j].center(), radius);
      if (hit.empty()) {
        v.uses_empty_clause = true;
        continue;
      }
      const Q1 sum = a.points[i] + a.points[j];
      const auto k = std::find(a.points.begin(), a.points.end(), sum);
      if (k == a.points.end()) return fail(Clause::kAdditivity, i, j);
      const auto kk = static_cast<std::size_t>(k - a.points.begin());
      if (hit.size() != 1 || hit[0] != kk) return fail(Clause::kAdditivity, i, j);
      v.uses_sum_clause = true;
      if (kk != i && kk != j) v.uses_sum_clause_distinct = true;
    }
  return v;
}

IndexElement from_points(std::span<const Q1> ys) {
  const std::size_t n = ys.size();
  if (n == 0) throw DegenerateInput("from_points needs at least one point");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (ys[i] == ys[j]) throw DegenerateInput("from_points: repeated point " + ys[i].str());

  std::vector<Q1> pool(ys.begin(), ys.end());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) pool.push_back(ys[i] + ys[j]);
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());

  Rational radius(1, 4 * static_cast<unsigned long>(n));
  for (std::size_t i = 0; i < pool.size(); ++i)
    for (std::size_t j = i + 1; j < pool.size(); ++j) {
      const Rational quarter = dist(pool[i], pool[j]) / 4;
      if (quarter < radius) radius = quarter;
    }
  radius.canonicalize();

  IndexElement a;
  for (const auto& y : ys) {
    a.balls.emplace_back(y, radius);
    a.points.push_back(y);
  }
  return a;
}

// --- enumeration ------------------------------------------------------------

namespace {

std::string key_of(const IndexElement& a) {
  std::string k;
  for (std::size_t i = 0; i < a.n(); ++i) {
    k += a.balls[i].center().str();
    k += '~';
    k += to_string(a.balls[i].radius());
    k += '@';
    k += a.points[i].str();
    k += ';';
  }
  return k;
}

IndexElement grid_element(unsigned long q) {
  IndexElement a;
  const Rational radius(1, 4 * q);
  for (unsigned long k = 0; k < q; ++k) {
    a.balls.emplace_back(Q1(static_cast<long>(k), q), radius);
    a.points.emplace_back(static_cast<long>(k), q);
  }
  return a;
}

// Coset grid {beta + k/q} with 0 < beta < 1/q.
IndexElement coset_element(unsigned long q, const Rational& beta) {
  const Rational step(1, q);
  const Rational gap = std::min(beta, Rational(step - beta));
  const Rational radius = std::min(Rational(1, 4 * q), Rational(gap / 4));
  IndexElement a;
  for (unsigned long k = 0; k < q; ++k) {
    const Q1 c(Rational(beta + step * k));
    a.balls.emplace_back(c, radius);
    a.points.push_back(c);
  }
  return a;
}

struct CosetSpec {
  unsigned long q;
  Rational beta;
};

std::vector<CosetSpec> coset_specs(unsigned long h) {
  std::vector<CosetSpec> out;
  for (unsigned long q = 1; q + 2 <= h; ++q) {
    const unsigned long t = h - q;
    for (unsigned long s = 1; s * q < t; ++s)
      if (std::gcd(s, t) == 1) out.push_back({q, Rational(s, t)});
  }
  return out;
}

// Sorted tuples of distinct rationals with denominators <= bound, at least
// one of denominator exactly `bound`, by size and then lexicographically.
class TupleStream {
 public:
  explicit TupleStream(unsigned long bound) {
    for (unsigned long q = 1; q <= bound; ++q)
      for (unsigned long p = 0; p < q; ++p)
        if (std::gcd(p, q) == 1) pool_.emplace_back(static_cast<long>(p), q);
    std::sort(pool_.begin(), pool_.end());
    for (const auto& x : pool_) fresh_.push_back(x.value().get_den() == bound);
    start(1);
  }

  std::optional<std::vector<Q1>> next() {
    while (size_ <= kMaxSize && size_ <= pool_.size()) {
      if (!pending_) {
        if (!step()) {
          start(size_ + 1);
          continue;
        }
      }
      pending_ = false;
      const bool has_fresh = std::any_of(comb_.begin(), comb_.end(),
                                         [&](std::size_t i) { return fresh_[i]; });
      if (!has_fresh) continue;
      std::vector<Q1> out;
      for (std::size_t i : comb_) out.push_back(pool_[i]);
      return out;
    }
    return std::nullopt;
  }

 private:
  static constexpr std::size_t kMaxSize = 4;

  void start(std::size_t size) {
    size_ = size;
    comb_.resize(size);
    std::iota(comb_.begin(), comb_.end(), std::size_t{0});
    pending_ = size <= pool_.size();
  }

  bool step() {
    const std::size_t n = pool_.size(), k = comb_.size();
    for (std::size_t i = k; i-- > 0;) {
      if (comb_[i] < n - k + i) {
        ++comb_[i];
        for (std::size_t j = i + 1; j < k; ++j) comb_[j] = comb_[j - 1] + 1;
        return true;
      }
    }
    return false;
  }

  std::vector<Q1> pool_;
  std::vector<bool> fresh_;
  std::vector<std::size_t> comb_;
  std::size_t size_ = 0;
  bool pending_ = false;
};

}  // namespace

// Each family is its own stream ordered by height; the streams take turns,
// each turn emitting that stream's next valid element not seen before. The
// grid stream skips its turn while it is ahead of both other streams, since
// one grid element per height is all it has.
struct IndexEnumerator::State {
  unsigned long grid_q = 0;
  unsigned long coset_height = 2;
  std::vector<CosetSpec> cosets;
  std::size_t coset_pos = 0;
  unsigned long tuple_bound = 0;
  std::optional<TupleStream> tuples;
  int turn = 0;  // 0 grid, 1 coset, 2 tuple
  std::unordered_set<std::string> seen;

  IndexElement grid() { return grid_element(++grid_q); }

  IndexElement coset() {
    while (coset_pos == cosets.size()) {
      cosets = coset_specs(++coset_height);
      coset_pos = 0;
    }
    const auto& c = cosets[coset_pos++];
    return coset_element(c.q, c.beta);
  }

  IndexElement tuple() {
    for (;;) {
      if (tuples)
        if (auto t = tuples->next()) return from_points(*t);
      tuples.emplace(++tuple_bound);
    }
  }

  std::size_t height() const { return std::max({grid_q, coset_height, tuple_bound}); }
};

IndexEnumerator::IndexEnumerator() : state_(std::make_unique<State>()) {}
IndexEnumerator::~IndexEnumerator() = default;
IndexEnumerator::IndexEnumerator(IndexEnumerator&&) noexcept = default;
IndexEnumerator& IndexEnumerator::operator=(IndexEnumerator&&) noexcept = default;

std::size_t IndexEnumerator::height() const { return state_->height(); }

IndexElement IndexEnumerator::next() {
  State& st = *state_;
  int stream = st.turn;
  if (stream == 0 && st.grid_q + 1 > std::max(st.coset_height, st.tuple_bound)) stream = 1;
  st.turn = (stream + 1) % 3;
  for (;;) {
    IndexElement cand = stream == 0 ? st.grid() : stream == 1 ? st.coset() : st.tuple();
    if (!validate(cand)) continue;
    if (!st.seen.insert(key_of(cand)).second) continue;
    return cand;
  }
}

std::vector<IndexElement> enumerate_index(std::size_t count) {
  std::vector<IndexElement> out;
  out.reserve(count);
  IndexEnumerator e;
  while (out.size() < count) out.push_back(e.next());
  return out;
}

}  // namespace nonrn
