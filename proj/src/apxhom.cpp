#include "nonrn/apxhom.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "nonrn/error.hpp"
#include "nonrn/parallel.hpp"

namespace nonrn {

MultiplierHom MultiplierHom::zero() { return fixed({0}); }

MultiplierHom MultiplierHom::identity() {
  MultiplierHom g = fixed({1});
  g.name_ = "identity";
  return g;
}

MultiplierHom MultiplierHom::fixed(std::vector<long> multipliers) {
  if (multipliers.empty()) throw MalformedInput("multiplier list is empty");
  MultiplierHom g;
  g.kind_ = Kind::kFixed;
  g.list_ = std::move(multipliers);
  if (g.list_ == std::vector<long>{0}) {
    g.name_ = "zero";
  } else {
    g.name_ = "list:";
    for (std::size_t i = 0; i < g.list_.size(); ++i)
      g.name_ += (i ? "," : "") + std::to_string(g.list_[i]);
  }
  return g;
}

MultiplierHom MultiplierHom::seeded(std::uint64_t seed, long bound) {
  if (bound < 0) throw MalformedInput("multiplier bound must be nonnegative");
  MultiplierHom g;
  g.kind_ = Kind::kSeeded;
  g.seed_ = seed;
  g.bound_ = bound;
  g.name_ = "seed:" + std::to_string(seed) + ":" + std::to_string(bound);
  return g;
}

namespace {

long parse_long(const std::string& s, std::size_t offset) {
  try {
    const Integer v = parse_integer(s);
    if (!v.fits_slong_p()) throw MalformedInput("integer out of range: " + s);
    return v.get_si();
  } catch (const MalformedInput& e) {
    throw MalformedInput(std::string(e.what()) + " (field at position " + std::to_string(offset) + ")");
  }
}

std::vector<std::pair<std::string, std::size_t>> split(const std::string& s, char sep,
                                                       std::size_t base) {
  std::vector<std::pair<std::string, std::size_t>> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i)
    if (i == s.size() || s[i] == sep) {
      out.emplace_back(s.substr(start, i - start), base + start);
      start = i + 1;
    }
  return out;
}

}  // namespace

MultiplierHom MultiplierHom::parse(const std::string& spec) {
  if (spec == "zero") return zero();
  if (spec == "identity") return identity();
  if (spec.rfind("seed:", 0) == 0) {
    const auto parts = split(spec.substr(5), ':', 5);
    if (parts.size() != 2) throw MalformedInput("expected seed:S:C, got " + spec);
    const long seed = parse_long(parts[0].first, parts[0].second);
    if (seed < 0) throw MalformedInput("seed must be nonnegative");
    return seeded(static_cast<std::uint64_t>(seed), parse_long(parts[1].first, parts[1].second));
  }
  if (spec.rfind("list:", 0) == 0) {
    std::vector<long> cs;
    for (const auto& [field, pos] : split(spec.substr(5), ',', 5)) cs.push_back(parse_long(field, pos));
    return fixed(std::move(cs));
  }
  throw MalformedInput("unknown homomorphism '" + spec + "' (zero, identity, seed:S:C, list:...)");
}

long MultiplierHom::multiplier(std::size_t pos) const {
  if (kind_ == Kind::kFixed) return list_[pos % list_.size()];
  std::mt19937_64 rng(seed_ ^ (0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(pos) + 1)));
  const auto span = static_cast<std::uint64_t>(2 * bound_ + 1);
  return static_cast<long>(rng() % span) - bound_;
}

Q1 eval_f(const IndexElement& a, const Q1& x) {
  if (const auto i = a.locate(x)) return x - a.points[*i];
  return Q1();
}

std::vector<std::size_t> discrepancy_c(const Q1& x, const Q1& y,
                                       std::span<const IndexElement> prefix) {
  const Q1 z = x + y;
  std::vector<std::size_t> out;
  for (std::size_t pos = 0; pos < prefix.size(); ++pos) {
    const auto& a = prefix[pos];
    if (eval_f(a, x) + eval_f(a, y) != eval_f(a, z)) out.push_back(pos);
  }
  return out;
}

AdditivityReport check_additivity(const Q1& x, const Q1& y, std::span<const IndexElement> prefix) {
  AdditivityReport rep;
  rep.x = x;
  rep.y = y;
  rep.discrepancies = discrepancy_c(x, y, prefix);
  const Q1 z = x + y;
  std::vector<IndexElement> members;
  for (std::size_t pos : rep.discrepancies) {
    const auto& a = prefix[pos];
    if (a.support_contains(x) && a.support_contains(y) && a.support_contains(z))
      rep.violations.push_back(pos);
    members.push_back(a);
  }
  const std::vector<Q1> u{x, y, z};
  rep.witness_ok = check_witness(u, members);
  return rep;
}

std::vector<std::size_t> delta_set(const MultiplierHom& g, const Q1& x,
                                   std::span<const IndexElement> prefix) {
  std::vector<std::size_t> out;
  for (std::size_t pos = 0; pos < prefix.size(); ++pos)
    if (eval_f(prefix[pos], x) != g.apply(pos, x)) out.push_back(pos);
  return out;
}

std::vector<Q1> default_samples() {
  std::vector<Q1> out;
  for (unsigned long q = 1; q <= 64; ++q)
    for (unsigned long p = 0; p < q; ++p)
      if (std::gcd(p, q) == 1) out.emplace_back(static_cast<long>(p), q);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::size_t> geometric_checkpoints(std::size_t m_max, std::size_t count) {
  std::vector<std::size_t> out;
  for (std::size_t m = m_max; m >= 1 && out.size() < count; m /= 2) out.push_back(m);
  std::reverse(out.begin(), out.end());
  return out;
}

RefutationReport refute(const MultiplierHom& g, std::span<const Q1> samples,
                        std::span<const IndexElement> prefix,
                        std::span<const std::size_t> checkpoints, const PierceOptions& opts,
                        unsigned threads) {
  if (samples.empty()) throw MalformedInput("refute needs at least one sample");
  RefutationReport rep;
  rep.g = g.name();
  rep.samples.resize(samples.size());
  // Parallelism goes over samples; each trend runs its checkpoints serially.
  parallel_for(samples.size(), threads, [&](std::size_t s) {
    const Q1& x = samples[s];
    auto member = [&](std::size_t pos, const IndexElement& a) {
      return eval_f(a, x) != g.apply(pos, x);
    };
    rep.samples[s] = SampleTrend{x, ideal_trend(prefix, member, checkpoints, opts, 1)};
  });
  std::size_t best_pierce = 0;
  for (std::size_t s = 0; s < rep.samples.size(); ++s) {
    const auto& cps = rep.samples[s].trend.checkpoints;
    const std::size_t last = cps.empty() ? 0 : cps.back().pierce;
    if (s == 0 || last > best_pierce) {
      best_pierce = last;
      rep.best = s;
    }
    rep.heuristic = rep.heuristic || rep.samples[s].trend.heuristic;
  }
  return rep;
}

}  // namespace nonrn
