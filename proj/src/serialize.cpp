#include "nonrn/serialize.hpp"

#include <algorithm>
#include <sstream>

#include "nonrn/error.hpp"

namespace nonrn {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) throw MalformedInput(std::string("expected an object with key '") + key + "'");
  const auto it = j.find(key);
  if (it == j.end()) throw MalformedInput(std::string("missing key '") + key + "'");
  return *it;
}

const Json& array_field(const Json& j, const char* key) {
  const Json& a = field(j, key);
  if (!a.is_array()) throw MalformedInput(std::string("'") + key + "' must be an array");
  return a;
}

std::string text(const Json& j, const char* what) {
  if (!j.is_string()) throw MalformedInput(std::string(what) + " must be a string \"p/q\"");
  return j.get<std::string>();
}

std::size_t count(const Json& j, const char* what) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
    throw MalformedInput(std::string(what) + " must be a nonnegative integer");
  return j.get<std::size_t>();
}

bool flag(const Json& j, const char* what) {
  if (!j.is_boolean()) throw MalformedInput(std::string(what) + " must be true or false");
  return j.get<bool>();
}

Json checkpoints_json(const TrendReport& t) {
  Json out = Json::array();
  for (const auto& c : t.checkpoints) {
    Json row;
    row["m"] = c.m;
    row["members"] = c.members;
    row["pierce"] = c.pierce;
    row["certificate"] = c.certificate == Certificate::kExact ? "exact" : "heuristic";
    out.push_back(std::move(row));
  }
  return out;
}

Certificate parse_certificate(const Json& j) {
  const std::string s = text(j, "certificate");
  if (s == "exact") return Certificate::kExact;
  if (s == "heuristic") return Certificate::kHeuristic;
  throw MalformedInput("certificate must be \"exact\" or \"heuristic\", got " + s);
}

TrendReport trend_from(const Json& j) {
  TrendReport t;
  for (const auto& row : array_field(j, "checkpoints")) {
    TrendPoint p;
    p.m = count(field(row, "m"), "m");
    p.members = count(field(row, "members"), "members");
    p.pierce = count(field(row, "pierce"), "pierce");
    p.certificate = parse_certificate(field(row, "certificate"));
    t.checkpoints.push_back(p);
  }
  const std::string verdict = text(field(j, "verdict"), "verdict");
  if (verdict != "bounded-looking" && verdict != "unbounded-looking")
    throw MalformedInput("unknown verdict " + verdict);
  t.bounded_looking = verdict == "bounded-looking";
  t.heuristic = std::any_of(t.checkpoints.begin(), t.checkpoints.end(), [](const TrendPoint& p) {
    return p.certificate == Certificate::kHeuristic;
  });
  return t;
}

std::vector<std::string> split_fields(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

Json to_json(const Q1& x) { return x.str(); }

Json to_json(const std::vector<Q1>& xs) {
  Json out = Json::array();
  for (const auto& x : xs) out.push_back(x.str());
  return out;
}

Json to_json(const Ball& b) {
  Json out;
  out["c"] = b.center().str();
  out["r"] = to_string(b.radius());
  return out;
}

Json to_json(const IndexElement& a) {
  Json out;
  out["n"] = a.n();
  Json balls = Json::array();
  for (const auto& b : a.balls) balls.push_back(to_json(b));
  out["balls"] = std::move(balls);
  out["points"] = to_json(a.points);
  return out;
}

Json to_json(const std::vector<IndexElement>& xs) {
  Json out = Json::array();
  for (const auto& a : xs) out.push_back(to_json(a));
  return out;
}

Json to_json(const LinearSystem& sys) {
  Json out;
  Json rows = Json::array();
  for (std::size_t i = 0; i < sys.coefficients.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < sys.coefficients.cols(); ++j) {
      const Integer& v = sys.coefficients(i, j);
      if (v.fits_slong_p())
        row.push_back(v.get_si());
      else
        row.push_back(v.get_str());
    }
    rows.push_back(std::move(row));
  }
  out["B"] = std::move(rows);
  out["r"] = to_json(sys.constants);
  Json balls = Json::array();
  for (const auto& b : sys.constraints) balls.push_back(to_json(b));
  out["balls"] = std::move(balls);
  return out;
}

Json to_json(const Validation& v) {
  Json out;
  out["ok"] = v.ok();
  out["clause"] = to_string(v.clause);
  if (!v.ok()) {
    out["i"] = v.i;
    out["j"] = v.j;
  } else {
    out["uses_sum_clause"] = v.uses_sum_clause;
    out["uses_sum_clause_distinct"] = v.uses_sum_clause_distinct;
    out["uses_empty_clause"] = v.uses_empty_clause;
  }
  return out;
}

Json to_json(const PierceResult& p) {
  Json out;
  out["size"] = p.size;
  out["witness"] = to_json(p.witness);
  if (p.certificate == Certificate::kHeuristic) out["certificate"] = "heuristic";
  return out;
}

Json to_json(const TrendReport& t) {
  Json out;
  out["format"] = kFormatVersion;
  out["checkpoints"] = checkpoints_json(t);
  out["verdict"] = verdict_name(t);
  out["heuristic"] = t.heuristic;
  return out;
}

Json to_json(const AdditivityReport& r) {
  Json out;
  out["x"] = r.x.str();
  out["y"] = r.y.str();
  out["discrepancies"] = r.discrepancies;
  out["violations"] = r.violations;
  out["witness_ok"] = r.witness_ok;
  return out;
}

Json to_json(const RefutationReport& r) {
  Json out;
  out["format"] = kFormatVersion;
  out["g"] = r.g;
  Json samples = Json::array();
  for (const auto& s : r.samples) {
    Json row;
    row["x"] = s.x.str();
    row["checkpoints"] = checkpoints_json(s.trend);
    row["verdict"] = verdict_name(s.trend);
    samples.push_back(std::move(row));
  }
  out["samples"] = std::move(samples);
  if (!r.samples.empty()) out["best"] = r.samples[r.best].x.str();
  out["heuristic"] = r.heuristic;
  return out;
}

Q1 parse_q1(const Json& j) { return Q1::parse(text(j, "rational")); }

std::vector<Q1> parse_q1s(const Json& j) {
  if (!j.is_array()) throw MalformedInput("expected an array of \"p/q\" strings");
  std::vector<Q1> out;
  for (const auto& x : j) out.push_back(parse_q1(x));
  return out;
}

Ball parse_ball(const Json& j, bool open) {
  return Ball(parse_q1(field(j, "c")), parse_rational(text(field(j, "r"), "radius")), open);
}

IndexElement parse_index_element(const Json& j) {
  IndexElement a;
  for (const auto& b : array_field(j, "balls")) a.balls.push_back(parse_ball(b, true));
  a.points = parse_q1s(array_field(j, "points"));
  const std::size_t n = count(field(j, "n"), "n");
  if (n != a.balls.size() || n != a.points.size())
    throw MalformedInput("'n' does not match the number of balls and points");
  return a;
}

std::vector<IndexElement> parse_index_elements(const Json& j) {
  if (j.is_object()) return {parse_index_element(j)};
  if (!j.is_array()) throw MalformedInput("expected an index element or an array of them");
  std::vector<IndexElement> out;
  for (const auto& a : j) out.push_back(parse_index_element(a));
  return out;
}

LinearSystem parse_linear_system(const Json& j) {
  LinearSystem sys;
  const Json& rows = array_field(j, "B");
  const std::size_t m = rows.size();
  std::size_t n = 0;
  if (m > 0) {
    if (!rows[0].is_array()) throw MalformedInput("'B' must be an array of rows");
    n = rows[0].size();
  }
  sys.coefficients = IntMatrix(m, n);
  for (std::size_t i = 0; i < m; ++i) {
    if (!rows[i].is_array() || rows[i].size() != n)
      throw MalformedInput("row " + std::to_string(i) + " of 'B' has the wrong length");
    for (std::size_t k = 0; k < n; ++k) {
      const Json& v = rows[i][k];
      if (v.is_number_integer())
        sys.coefficients(i, k) = Integer(v.get<long>());
      else if (v.is_string())
        sys.coefficients(i, k) = parse_integer(v.get<std::string>());
      else
        throw MalformedInput("entries of 'B' must be integers");
    }
  }
  sys.constants = parse_q1s(array_field(j, "r"));
  for (const auto& b : array_field(j, "balls")) sys.constraints.push_back(parse_ball(b, false));
  sys.check();
  return sys;
}

PierceResult parse_pierce_result(const Json& j) {
  PierceResult p;
  p.size = count(field(j, "size"), "size");
  p.witness = parse_q1s(array_field(j, "witness"));
  if (p.witness.size() != p.size) throw MalformedInput("'size' does not match the witness");
  if (j.contains("certificate")) p.certificate = parse_certificate(j["certificate"]);
  return p;
}

TrendReport parse_trend_report(const Json& j) { return trend_from(j); }

RefutationReport parse_refutation_report(const Json& j) {
  RefutationReport r;
  r.g = text(field(j, "g"), "g");
  for (const auto& row : array_field(j, "samples"))
    r.samples.push_back(SampleTrend{parse_q1(field(row, "x")), trend_from(row)});
  if (!r.samples.empty()) {
    const Q1 best = parse_q1(field(j, "best"));
    const auto it = std::find_if(r.samples.begin(), r.samples.end(),
                                 [&](const SampleTrend& s) { return s.x == best; });
    if (it == r.samples.end()) throw MalformedInput("'best' is not one of the samples");
    r.best = static_cast<std::size_t>(it - r.samples.begin());
  }
  r.heuristic = flag(field(j, "heuristic"), "heuristic");
  return r;
}

Json parse_json_text(const std::string& s) {
  try {
    return Json::parse(s);
  } catch (const nlohmann::json::parse_error& e) {
    throw MalformedInput(std::string("invalid JSON: ") + e.what());
  }
}

std::string dump(const Json& j) { return j.dump() + "\n"; }

std::vector<Q1> parse_q1_list(const std::string& s) {
  std::vector<Q1> out;
  std::size_t pos = 0;
  for (const auto& f : split_fields(s)) {
    if (f.empty()) throw MalformedInput("empty entry at position " + std::to_string(pos));
    try {
      out.push_back(Q1::parse(f));
    } catch (const MalformedInput& e) {
      throw MalformedInput(std::string(e.what()) + " (entry at position " + std::to_string(pos) + ")");
    }
    pos += f.size() + 1;
  }
  return out;
}

std::vector<std::size_t> parse_size_list(const std::string& s) {
  std::vector<std::size_t> out;
  std::size_t pos = 0;
  for (const auto& f : split_fields(s)) {
    const bool digits = !f.empty() && std::all_of(f.begin(), f.end(), [](char c) {
      return c >= '0' && c <= '9';
    });
    if (!digits || f.size() > 18)
      throw MalformedInput("expected a nonnegative integer at position " + std::to_string(pos));
    out.push_back(std::stoull(f));
    pos += f.size() + 1;
  }
  return out;
}

std::string verdict_name(const TrendReport& t) {
  return t.bounded_looking ? "bounded-looking" : "unbounded-looking";
}

std::string trend_csv(const TrendReport& t) {
  std::ostringstream out;
  out << "m,p_m\n";
  for (const auto& c : t.checkpoints) out << c.m << ',' << c.pierce << '\n';
  out << "verdict," << verdict_name(t) << '\n';
  return out.str();
}

std::string refutation_csv(const RefutationReport& r) {
  std::ostringstream out;
  out << "x,m,p_m\n";
  for (const auto& s : r.samples)
    for (const auto& c : s.trend.checkpoints) out << s.x.str() << ',' << c.m << ',' << c.pierce << '\n';
  return out.str();
}

}  // namespace nonrn
