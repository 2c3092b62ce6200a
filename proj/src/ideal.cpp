#include "nonrn/ideal.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>

#include "nonrn/error.hpp"
#include "nonrn/parallel.hpp"

namespace nonrn {

std::string to_string(Certificate c) {
  return c == Certificate::kExact ? "exact" : "heuristic";
}

std::size_t default_exact_limit() {
  if (const char* env = std::getenv("NONRN_PIERCE_LIMIT")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return 64;
}

bool check_witness(std::span<const Q1> u, std::span<const IndexElement> x) {
  return std::all_of(x.begin(), x.end(), [&](const IndexElement& a) {
    return std::any_of(u.begin(), u.end(),
                       [&](const Q1& p) { return !a.support_contains(p); });
  });
}

namespace {

// Fixed-size bitset whose binary queries run word by word without
// allocating; the branch and bound below lives on these.
class Bits {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  Bits() = default;
  explicit Bits(std::size_t n, bool value = false)
      : n_(n), w_((n + 63) / 64, value ? ~std::uint64_t{0} : 0) {
    if (value) trim();
  }

  std::size_t size() const { return n_; }
  void set(std::size_t i) { w_[i / 64] |= std::uint64_t{1} << (i % 64); }
  bool test(std::size_t i) const { return (w_[i / 64] >> (i % 64)) & 1; }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto x : w_) c += static_cast<std::size_t>(std::popcount(x));
    return c;
  }
  bool none() const {
    return std::all_of(w_.begin(), w_.end(), [](std::uint64_t x) { return x == 0; });
  }
  bool any() const { return !none(); }

  // First set bit at or after i.
  std::size_t next(std::size_t i) const {
    if (i >= n_) return npos;
    std::size_t k = i / 64;
    std::uint64_t x = w_[k] & (~std::uint64_t{0} << (i % 64));
    for (;;) {
      if (x) return k * 64 + static_cast<std::size_t>(std::countr_zero(x));
      if (++k == w_.size()) return npos;
      x = w_[k];
    }
  }
  std::size_t last() const {
    for (std::size_t k = w_.size(); k-- > 0;)
      if (w_[k]) return k * 64 + 63 - static_cast<std::size_t>(std::countl_zero(w_[k]));
    return npos;
  }

  static std::size_t and_count(const Bits& a, const Bits& b) {
    std::size_t c = 0;
    for (std::size_t k = 0; k < a.w_.size(); ++k)
      c += static_cast<std::size_t>(std::popcount(a.w_[k] & b.w_[k]));
    return c;
  }
  static bool intersects(const Bits& a, const Bits& b) {
    for (std::size_t k = 0; k < a.w_.size(); ++k)
      if (a.w_[k] & b.w_[k]) return true;
    return false;
  }
  static bool subset(const Bits& a, const Bits& b) {
    for (std::size_t k = 0; k < a.w_.size(); ++k)
      if (a.w_[k] & ~b.w_[k]) return false;
    return true;
  }
  // a \ b.
  static Bits minus(const Bits& a, const Bits& b) {
    Bits out = a;
    for (std::size_t k = 0; k < out.w_.size(); ++k) out.w_[k] &= ~b.w_[k];
    return out;
  }
  static Bits both(const Bits& a, const Bits& b) {
    Bits out = a;
    for (std::size_t k = 0; k < out.w_.size(); ++k) out.w_[k] &= b.w_[k];
    return out;
  }
  Bits& operator&=(const Bits& b) {
    for (std::size_t k = 0; k < w_.size(); ++k) w_[k] &= b.w_[k];
    return *this;
  }
  void reset(std::size_t i) { w_[i / 64] &= ~(std::uint64_t{1} << (i % 64)); }
  Bits& operator|=(const Bits& b) {
    for (std::size_t k = 0; k < w_.size(); ++k) w_[k] |= b.w_[k];
    return *this;
  }
  friend bool operator==(const Bits&, const Bits&) = default;

  // Bits i >= from.
  static Bits from(std::size_t n, std::size_t from) {
    Bits out(n);
    for (std::size_t i = from; i < n && i % 64 != 0; ++i) out.set(i);
    for (std::size_t k = (from + 63) / 64; k < out.w_.size(); ++k) out.w_[k] = ~std::uint64_t{0};
    out.trim();
    return out;
  }

 private:
  void trim() {
    if (n_ % 64 && !w_.empty()) w_.back() &= (std::uint64_t{1} << (n_ % 64)) - 1;
  }

  std::size_t n_ = 0;
  std::vector<std::uint64_t> w_;
};

// Minimum hitting set over a finite incidence structure: sets[s] is the set
// of candidate indices hitting s, cover[c] the sets candidate c hits.
// Candidates are indexed in ascending point order.
class HittingSet {
 public:
  HittingSet(std::vector<Bits> sets, std::vector<Bits> cover)
      : sets_(std::move(sets)), cover_(std::move(cover)) {
    for (const auto& s : sets_) last_.push_back(s.last());
  }

  Bits all_sets() const { return Bits(sets_.size(), true); }

  std::vector<std::size_t> greedy() const {
    Bits left = all_sets();
    std::vector<std::size_t> out;
    while (left.any()) {
      std::size_t best = Bits::npos, best_gain = 0;
      for (std::size_t c = 0; c < cover_.size(); ++c) {
        const std::size_t gain = Bits::and_count(cover_[c], left);
        if (gain > best_gain) {
          best_gain = gain;
          best = c;
        }
      }
      if (best == Bits::npos) throw std::logic_error("hitting set: uncoverable set");
      out.push_back(best);
      left = Bits::minus(left, cover_[best]);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  // Size of a greedy packing of pairwise disjoint sets: a lower bound.
  std::size_t packing_bound() const {
    std::vector<std::pair<std::size_t, std::size_t>> bysize;
    for (std::size_t s = 0; s < sets_.size(); ++s) bysize.emplace_back(sets_[s].count(), s);
    std::sort(bysize.begin(), bysize.end());
    Bits used(cover_.size());
    std::size_t bound = 0;
    for (const auto& [sz, s] : bysize) {
      if (!Bits::intersects(sets_[s], used)) {
        used |= sets_[s];
        ++bound;
      }
    }
    return bound;
  }

  // Finds at most k candidates from pool hitting every set in left,
  // appending them to *out. Some candidate hits the set with the fewest
  // options, so the node branches on that set's options. Among those only
  // candidates with maximal hits within left need trying: a solution using
  // a dominated one can swap it for its dominator. Once a branch fails no
  // solution contains its candidate, so later branches drop it.
  bool search(const Bits& left, std::size_t k, Bits pool, std::vector<std::size_t>* out) const {
    if (left.none()) return true;
    if (k == 0) return false;
    if (k == 1) return cover_one(left, pool, out);
    if (k >= 3) pool = maximal_within(left, pool);
    std::size_t pick = Bits::npos, pick_count = 0;
    for (auto s = left.next(0); s != Bits::npos; s = left.next(s + 1)) {
      const std::size_t count = Bits::and_count(sets_[s], pool);
      if (count == 0) return false;
      if (pick == Bits::npos || count < pick_count) {
        pick = s;
        pick_count = count;
      }
    }
    const Bits opts = Bits::both(sets_[pick], pool);
    std::vector<std::pair<std::size_t, std::size_t>> by_gain;  // (-gain, c)
    for (auto c = opts.next(0); c != Bits::npos; c = opts.next(c + 1))
      by_gain.emplace_back(static_cast<std::size_t>(-Bits::and_count(cover_[c], left)), c);
    std::sort(by_gain.begin(), by_gain.end());
    std::vector<Bits> hit;
    std::vector<std::size_t> branch;
    for (const auto& [neg, c] : by_gain) {
      Bits pat = Bits::both(cover_[c], left);
      if (std::any_of(hit.begin(), hit.end(), [&](const Bits& h) { return Bits::subset(pat, h); }))
        continue;
      hit.push_back(std::move(pat));
      branch.push_back(c);
    }
    std::sort(branch.begin(), branch.end());
    for (std::size_t c : branch) {
      if (search(Bits::minus(left, cover_[c]), k - 1, pool, out)) {
        if (out) out->push_back(c);
        return true;
      }
      pool.reset(c);
    }
    return false;
  }

  // Candidates of pool whose hits within left are not contained in those of
  // another candidate (ties keep the smallest index).
  Bits maximal_within(const Bits& left, const Bits& pool) const {
    std::vector<std::pair<std::size_t, std::size_t>> by_gain;  // (-gain, c)
    for (auto c = pool.next(0); c != Bits::npos; c = pool.next(c + 1)) {
      const std::size_t gain = Bits::and_count(cover_[c], left);
      if (gain > 0) by_gain.emplace_back(static_cast<std::size_t>(-gain), c);
    }
    std::sort(by_gain.begin(), by_gain.end());
    std::vector<Bits> hit;
    Bits out(cover_.size());
    for (const auto& [neg, c] : by_gain) {
      Bits pat = Bits::both(cover_[c], left);
      if (std::any_of(hit.begin(), hit.end(), [&](const Bits& h) { return Bits::subset(pat, h); }))
        continue;
      hit.push_back(std::move(pat));
      out.set(c);
    }
    return out;
  }

  // One candidate from pool hitting every set in left: the candidates of
  // those sets, intersected until nothing is left.
  bool cover_one(const Bits& left, const Bits& pool, std::vector<std::size_t>* out) const {
    Bits acc = pool;
    for (auto s = left.next(0); s != Bits::npos; s = left.next(s + 1)) {
      acc &= sets_[s];
      if (acc.none()) return false;
    }
    if (out) out->push_back(acc.next(0));
    return true;
  }

  // Lexicographically smallest hitting set of exactly k candidates, given
  // that k is the minimum. A candidate whose hits are contained in those of
  // an earlier candidate that already failed cannot succeed either.
  std::vector<std::size_t> lex_smallest(std::size_t k) const {
    std::vector<std::size_t> out;
    Bits left = all_sets();
    std::size_t from = 0;
    while (left.any()) {
      std::size_t deadline = Bits::npos;
      for (auto s = left.next(0); s != Bits::npos; s = left.next(s + 1))
        deadline = std::min(deadline, last_[s]);
      std::vector<Bits> failed;
      bool placed = false;
      for (std::size_t c = from; c < cover_.size() && c <= deadline; ++c) {
        if (!Bits::intersects(cover_[c], left)) continue;
        Bits pat = Bits::both(cover_[c], left);
        if (std::any_of(failed.begin(), failed.end(),
                        [&](const Bits& f) { return Bits::subset(pat, f); }))
          continue;
        Bits rest = Bits::minus(left, cover_[c]);
        if (search(rest, k - out.size() - 1, Bits::from(cover_.size(), c + 1), nullptr)) {
          out.push_back(c);
          left = std::move(rest);
          from = c + 1;
          placed = true;
          break;
        }
        failed.push_back(std::move(pat));
      }
      if (!placed) throw std::logic_error("hitting set: lexicographic search failed");
    }
    return out;
  }

 private:
  std::vector<Bits> sets_;
  std::vector<Bits> cover_;
  std::vector<std::size_t> last_;
};

struct Instance {
  std::vector<Q1> points;   // kept candidates, ascending
  std::vector<Bits> sets;   // per kept set, over kept candidates
  std::vector<Bits> cover;  // per kept candidate, over kept sets
};

// Candidate points are 0 and the left endpoints of the complement arcs.
// Sliding a witness point to the left only gains closed arcs until it meets
// a left endpoint (or 0), so these points dominate every other point and
// the lexicographically smallest minimum witness uses only them.
std::vector<Rational> candidate_points(std::span<const ClosedRegion> ks) {
  std::vector<Rational> vals{Rational(0)};
  for (const auto& k : ks) {
    if (k.empty()) throw std::invalid_argument("pierce: element whose support covers T");
    for (const auto& arc : k.arcs()) vals.push_back(arc.lo);
  }
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  return vals;
}

// Calls mark(first, last) for each half-open range of candidate indices
// lying in k.
template <class Mark>
void for_each_range(const ClosedRegion& k, const std::vector<Rational>& vals, Mark&& mark) {
  auto index = [&](auto it) { return static_cast<std::size_t>(it - vals.begin()); };
  auto range = [&](const Rational& lo, const Rational& hi) {
    mark(index(std::lower_bound(vals.begin(), vals.end(), lo)),
         index(std::upper_bound(vals.begin(), vals.end(), hi)));
  };
  if (k.is_full()) {
    mark(0, vals.size());
    return;
  }
  for (const auto& arc : k.arcs()) {
    if (arc.hi < 1) {
      range(arc.lo, arc.hi);
    } else {
      range(arc.lo, Rational(1));
      range(Rational(0), Rational(arc.hi - 1));
    }
  }
}

Instance build_instance(std::span<const ClosedRegion> ks) {
  const std::vector<Rational> vals = candidate_points(ks);
  const std::size_t nc = vals.size(), ns = ks.size();

  std::vector<Bits> cover(nc, Bits(ns));
  for (std::size_t s = 0; s < ns; ++s)
    for_each_range(ks[s], vals, [&](std::size_t first, std::size_t last) {
      for (std::size_t c = first; c < last; ++c) cover[c].set(s);
    });

  // Drop candidates dominated by a smaller kept candidate. Swapping such a
  // point for its dominator never hurts and makes a witness smaller in the
  // lexicographic order.
  std::vector<std::size_t> kept;
  for (std::size_t c = 0; c < nc; ++c) {
    if (cover[c].none()) continue;
    const bool dominated = std::any_of(kept.begin(), kept.end(), [&](std::size_t d) {
      return Bits::subset(cover[c], cover[d]);
    });
    if (!dominated) kept.push_back(c);
  }

  std::vector<Bits> sets(ns, Bits(kept.size()));
  for (std::size_t i = 0; i < kept.size(); ++i)
    for (auto s = cover[kept[i]].next(0); s != Bits::npos; s = cover[kept[i]].next(s + 1))
      sets[s].set(i);

  // Drop sets that contain another set's candidates: hitting the smaller
  // one hits them too.
  std::vector<std::size_t> live;
  for (std::size_t s = 0; s < ns; ++s) {
    bool redundant = false;
    for (std::size_t t = 0; t < ns && !redundant; ++t) {
      if (t == s || !Bits::subset(sets[t], sets[s])) continue;
      redundant = sets[t] != sets[s] || t < s;
    }
    if (!redundant) live.push_back(s);
  }

  Instance inst;
  for (std::size_t c : kept) inst.points.emplace_back(vals[c]);
  for (std::size_t s : live) inst.sets.push_back(sets[s]);
  inst.cover.assign(kept.size(), Bits(live.size()));
  for (std::size_t j = 0; j < live.size(); ++j)
    for (auto c = inst.sets[j].next(0); c != Bits::npos; c = inst.sets[j].next(c + 1))
      inst.cover[c].set(j);
  return inst;
}

// Minimum witness for ks, given a lower bound on its size. With `lex` the
// lexicographically smallest one, otherwise whichever the search meets first.
std::vector<Q1> solve_exact(std::span<const ClosedRegion> ks, std::size_t lower, bool lex) {
  if (ks.empty()) return {};
  const Instance inst = build_instance(ks);
  const HittingSet hs(inst.sets, inst.cover);
  std::vector<std::size_t> chosen = hs.greedy();
  for (std::size_t k = std::max({std::size_t{1}, lower, hs.packing_bound()}); k < chosen.size(); ++k) {
    std::vector<std::size_t> found;
    if (hs.search(hs.all_sets(), k, Bits(inst.cover.size(), true), &found)) {
      chosen = std::move(found);
      break;
    }
  }
  if (lex) chosen = hs.lex_smallest(chosen.size());
  std::sort(chosen.begin(), chosen.end());
  std::vector<Q1> out;
  for (std::size_t c : chosen) out.push_back(inst.points[c]);
  return out;
}

bool hits(const ClosedRegion& k, std::span<const Q1> u) {
  return std::any_of(u.begin(), u.end(), [&](const Q1& p) { return k.contains(p); });
}

// Exact solve by constraint generation: solve a growing working subfamily
// and add sets the current witness misses. A witness that is minimum for a
// subfamily and hits everything is minimum for the whole family. The last
// round asks for the lexicographically smallest witness of the subfamily;
// if it hits everything it is also the smallest for the family, since every
// witness of the family is one of the subfamily.
// Working subfamily carried between calls on nested prefixes of one family.
// Its pierce number is a lower bound for any longer prefix.
struct LazyState {
  std::vector<std::size_t> work;
  std::size_t lower = 0;
};

std::vector<Q1> solve_lazy(std::span<const ClosedRegion> ks, LazyState& st) {
  constexpr std::size_t kBatch = 64;
  std::vector<ClosedRegion> work;
  std::vector<char> in_work(ks.size(), 0);
  for (std::size_t s : st.work) {
    in_work[s] = 1;
    work.push_back(ks[s]);
  }
  bool lex = false;
  for (;;) {
    std::vector<Q1> u = solve_exact(work, st.lower, lex);
    st.lower = u.size();
    std::size_t added = 0;
    for (std::size_t s = 0; s < ks.size() && added < kBatch; ++s) {
      if (in_work[s] || hits(ks[s], u)) continue;
      in_work[s] = 1;
      work.push_back(ks[s]);
      st.work.push_back(s);
      ++added;
    }
    if (added > 0) {
      lex = false;
    } else if (lex) {
      return u;
    } else {
      lex = true;
    }
  }
}

std::vector<Q1> solve_lazy(std::span<const ClosedRegion> ks) {
  LazyState st;
  return solve_lazy(ks, st);
}

// Greedy max-coverage over the candidate points, counting hits with a
// difference array so that no incidence matrix is stored.
std::vector<Q1> solve_greedy(std::span<const ClosedRegion> ks) {
  const std::vector<Rational> vals = candidate_points(ks);
  std::vector<char> open(ks.size(), 1);
  std::size_t left = ks.size();
  std::vector<Q1> out;
  while (left > 0) {
    std::vector<long> diff(vals.size() + 1, 0);
    for (std::size_t s = 0; s < ks.size(); ++s)
      if (open[s])
        for_each_range(ks[s], vals, [&](std::size_t first, std::size_t last) {
          ++diff[first];
          --diff[last];
        });
    std::size_t best = 0;
    long run = 0, best_count = -1;
    for (std::size_t c = 0; c < vals.size(); ++c) {
      run += diff[c];
      if (run > best_count) {
        best_count = run;
        best = c;
      }
    }
    const Q1 p(vals[best]);
    out.push_back(p);
    for (std::size_t s = 0; s < ks.size(); ++s)
      if (open[s] && ks[s].contains(p)) {
        open[s] = 0;
        --left;
      }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

PierceResult pierce_complements(std::span<const ClosedRegion> ks, const PierceOptions& opts) {
  PierceResult res;
  if (ks.empty()) return res;
  const bool exact = ks.size() <= opts.exact_limit;
  if (!exact && !opts.allow_heuristic) throw SizeLimitExceeded(ks.size(), opts.exact_limit);
  res.witness = exact ? solve_lazy(ks) : solve_greedy(ks);
  res.size = res.witness.size();
  res.certificate = exact ? Certificate::kExact : Certificate::kHeuristic;
  return res;
}

PierceResult pierce_number(std::span<const IndexElement> x, const PierceOptions& opts) {
  if (x.size() > opts.exact_limit && !opts.allow_heuristic)
    throw SizeLimitExceeded(x.size(), opts.exact_limit);
  std::vector<ClosedRegion> ks;
  ks.reserve(x.size());
  for (const auto& a : x) ks.push_back(complement(a.support()));
  return pierce_complements(ks, opts);
}

namespace {

bool partition_into(std::span<const Region> supports, std::size_t i,
                    std::vector<Region>& parts, std::size_t max_parts) {
  if (i == supports.size()) return true;
  for (std::size_t p = 0; p < parts.size(); ++p) {
    Region merged = unite(parts[p], supports[i]);
    if (covers_circle(merged)) continue;
    std::swap(parts[p], merged);
    if (partition_into(supports, i + 1, parts, max_parts)) return true;
    std::swap(parts[p], merged);
  }
  if (parts.size() < max_parts && !covers_circle(supports[i])) {
    parts.push_back(supports[i]);
    if (partition_into(supports, i + 1, parts, max_parts)) return true;
    parts.pop_back();
  }
  return false;
}

}  // namespace

std::optional<std::size_t> pierce_by_partition(std::span<const IndexElement> x,
                                               std::size_t max_parts) {
  constexpr std::size_t kLimit = 12;
  if (x.size() > kLimit) throw SizeLimitExceeded(x.size(), kLimit);
  std::vector<Region> supports;
  for (const auto& a : x) supports.push_back(a.support());
  for (std::size_t n = 0; n <= max_parts; ++n) {
    std::vector<Region> parts;
    if (partition_into(supports, 0, parts, n)) return n;
  }
  return std::nullopt;
}

IndexElement escape_witness(std::span<const Q1> u) {
  std::vector<Q1> pts(u.begin(), u.end());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.empty()) pts.emplace_back();
  return from_points(pts);
}

TrendReport ideal_trend(std::span<const IndexElement> prefix, const FamilyPredicate& member,
                        std::span<const std::size_t> checkpoints, const PierceOptions& opts,
                        unsigned threads) {
  std::vector<std::size_t> marks(checkpoints.begin(), checkpoints.end());
  std::sort(marks.begin(), marks.end());
  marks.erase(std::unique(marks.begin(), marks.end()), marks.end());
  if (!marks.empty() && marks.back() > prefix.size())
    throw std::invalid_argument("ideal_trend: checkpoint beyond enumerated prefix");

  const std::size_t limit = marks.empty() ? 0 : marks.back();
  std::vector<std::size_t> positions;
  for (std::size_t pos = 0; pos < limit; ++pos)
    if (member(pos, prefix[pos])) positions.push_back(pos);

  std::vector<ClosedRegion> ks(positions.size());
  parallel_for(positions.size(), threads,
               [&](std::size_t i) { ks[i] = complement(prefix[positions[i]].support()); });

  TrendReport rep;
  rep.checkpoints.resize(marks.size());
  // Checkpoints run in ascending order and share the working subfamily. The
  // exact answer is the unique lex-smallest minimum witness, so it does not
  // depend on the route taken.
  LazyState st;
  for (std::size_t c = 0; c < marks.size(); ++c) {
    const std::size_t m = marks[c];
    const auto count = static_cast<std::size_t>(
        std::lower_bound(positions.begin(), positions.end(), m) - positions.begin());
    const auto sub = std::span<const ClosedRegion>(ks).first(count);
    TrendPoint& tp = rep.checkpoints[c];
    tp.m = m;
    tp.members = count;
    if (count == 0) {
      tp.pierce = 0;
      tp.certificate = Certificate::kExact;
    } else if (count <= opts.exact_limit) {
      tp.pierce = solve_lazy(sub, st).size();
      tp.certificate = Certificate::kExact;
    } else {
      tp.pierce = solve_greedy(sub).size();
      tp.certificate = Certificate::kHeuristic;
    }
  }

  for (const auto& p : rep.checkpoints)
    rep.heuristic = rep.heuristic || p.certificate == Certificate::kHeuristic;
  const std::size_t n = rep.checkpoints.size();
  const std::size_t tail = std::min<std::size_t>(3, n);
  for (std::size_t i = n - tail; i + 1 < n; ++i)
    if (rep.checkpoints[i].pierce != rep.checkpoints[i + 1].pierce) rep.bounded_looking = false;
  return rep;
}

}  // namespace nonrn
