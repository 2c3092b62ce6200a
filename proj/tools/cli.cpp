#include "cli.hpp"

#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "acceptance.hpp"
#include "nonrn/apxhom.hpp"
#include "nonrn/error.hpp"
#include "nonrn/serialize.hpp"

namespace nonrn::cli {

namespace {

struct Outcome {
  std::string text;
  int code = kOk;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MalformedInput("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Json read_json(const std::string& path) { return parse_json_text(read_file(path)); }

PierceOptions pierce_options(std::size_t size_limit, bool heuristic) {
  PierceOptions o;
  o.exact_limit = size_limit;
  o.allow_heuristic = heuristic;
  return o;
}

std::vector<std::size_t> checkpoints_for(const std::string& list, std::size_t m_max) {
  if (m_max == 0) throw MalformedInput("--m-max must be at least 1");
  if (list.empty()) return geometric_checkpoints(m_max);
  std::vector<std::size_t> marks = parse_size_list(list);
  for (std::size_t m : marks)
    if (m == 0 || m > m_max)
      throw MalformedInput("checkpoint " + std::to_string(m) + " outside [1, --m-max]");
  return marks;
}

// Uniform p/q with 1 <= q <= max_den, by the same modular draw as the tests.
Q1 random_q1(std::mt19937_64& eng, long max_den) {
  const long q = 1 + static_cast<long>(eng() % static_cast<std::uint64_t>(max_den));
  const long p = static_cast<long>(eng() % static_cast<std::uint64_t>(q));
  return Q1(p, static_cast<unsigned long>(q));
}

FamilyPredicate family(const std::string& name, const std::string& g_spec, const std::string& x) {
  if (name == "empty") return [](std::size_t, const IndexElement&) { return false; };
  if (name == "all") return [](std::size_t, const IndexElement&) { return true; };
  if (name == "tiny") {
    const Rational eighth(1, 8);
    return [eighth](std::size_t, const IndexElement& a) { return a.support().length() < eighth; };
  }
  if (name == "delta") {
    if (x.empty()) throw MalformedInput("--family delta needs --x");
    const MultiplierHom g = MultiplierHom::parse(g_spec);
    const Q1 point = Q1::parse(x);
    return [g, point](std::size_t pos, const IndexElement& a) {
      return eval_f(a, point) != g.apply(pos, point);
    };
  }
  throw MalformedInput("unknown family '" + name + "' (empty, tiny, all, delta)");
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact experiments on the circle group, its index set and witness ideal", "nonrn"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string out_path;
  unsigned threads = 1;
  std::size_t size_limit = default_exact_limit();
  bool want_json = false, want_csv = false;
  app.add_option("--out", out_path, "Write results to this file instead of stdout");
  app.add_option("--threads", threads, "Worker threads (results do not depend on it)")
      ->check(CLI::Range(1u, 256u));
  app.add_option("--size-limit", size_limit,
                 "Largest family solved exactly (default from NONRN_PIERCE_LIMIT, else 64)");
  auto* json_flag = app.add_flag("--json", want_json, "JSON output");
  auto* csv_flag = app.add_flag("--csv", want_csv, "CSV output");
  json_flag->excludes(csv_flag);

  std::function<Outcome()> action;

  auto* gen = app.add_subcommand("gen-index", "First M elements of the canonical enumeration");
  std::size_t count = 0;
  gen->add_option("--count", count, "Number of elements")->required();
  gen->callback([&] {
    action = [&] { return Outcome{dump(to_json(enumerate_index(count)))}; };
  });

  auto* val = app.add_subcommand("validate-index", "Check index elements read from FILE");
  std::string file;
  val->add_option("file", file, "Element or array of elements")->required();
  val->callback([&] {
    action = [&] {
      const Json j = read_json(file);
      const auto xs = parse_index_elements(j);
      Json res = Json::array();
      bool ok = true;
      for (const auto& a : xs) {
        const Validation v = validate(a);
        ok = ok && v.ok();
        res.push_back(to_json(v));
      }
      return Outcome{dump(j.is_object() ? res[0] : res), ok ? kOk : kDomainError};
    };
  });

  auto* fp = app.add_subcommand("from-points", "Canonical element with the given points");
  std::string points;
  fp->add_option("points", points, "Comma-separated rationals, e.g. 0/1,1/2")->required();
  fp->callback([&] {
    action = [&] { return Outcome{dump(to_json(from_points(parse_q1_list(points))))}; };
  });

  auto* solve = app.add_subcommand("solve-system", "Solve a linear system over T read from FILE");
  solve->add_option("file", file, "System {\"B\", \"r\", \"balls\"}")->required();
  solve->callback([&] {
    action = [&] {
      const auto sol = solve_torus_system(parse_linear_system(read_json(file)));
      return Outcome{sol ? dump(to_json(*sol)) : std::string("UNSAT\n")};
    };
  });

  auto* pierce = app.add_subcommand("pierce", "Minimum witness for the elements in FILE");
  bool heuristic = false;
  pierce->add_option("file", file, "Element or array of elements")->required();
  pierce->add_flag("--heuristic", heuristic, "Fall back to the greedy bound above --size-limit");
  pierce->callback([&] {
    action = [&] {
      const auto xs = parse_index_elements(read_json(file));
      return Outcome{dump(to_json(pierce_number(xs, pierce_options(size_limit, heuristic))))};
    };
  });

  auto* trend = app.add_subcommand("ideal-trend", "Pierce numbers of a family over growing prefixes");
  std::string family_name, marks_text, g_spec = "zero", x_text;
  std::size_t m_max = 0;
  trend->add_option("--family", family_name, "empty, tiny, all or delta")->required();
  trend->add_option("--m-max", m_max, "Longest prefix")->required();
  trend->add_option("--checkpoints", marks_text, "Comma-separated prefix lengths");
  trend->add_option("--g", g_spec, "Homomorphism for the delta family");
  trend->add_option("--x", x_text, "Point for the delta family");
  trend->callback([&] {
    action = [&] {
      const auto member = family(family_name, g_spec, x_text);
      const auto marks = checkpoints_for(marks_text, m_max);
      const auto prefix = enumerate_index(m_max);
      const TrendReport t =
          ideal_trend(prefix, member, marks, pierce_options(size_limit, true), threads);
      if (!want_json) return Outcome{trend_csv(t)};
      Json j = to_json(t);
      Json params;
      params["family"] = family_name;
      if (family_name == "delta") {
        params["g"] = MultiplierHom::parse(g_spec).name();
        params["x"] = Q1::parse(x_text).str();
      }
      params["m_max"] = m_max;
      params["size_limit"] = size_limit;
      j["params"] = std::move(params);
      return Outcome{dump(j)};
    };
  });

  auto* ef = app.add_subcommand("eval-f", "f_a(x) for each element in FILE");
  std::string x_arg;
  ef->add_option("file", file, "Element or array of elements")->required();
  ef->add_option("x", x_arg, "Point p/q")->required();
  ef->callback([&] {
    action = [&] {
      const auto xs = parse_index_elements(read_json(file));
      const Q1 x = Q1::parse(x_arg);
      std::vector<Q1> values;
      for (const auto& a : xs) values.push_back(eval_f(a, x));
      Json j;
      j["x"] = x.str();
      j["f"] = to_json(values);
      return Outcome{dump(j)};
    };
  });

  auto* l1 = app.add_subcommand("check-l1", "Additivity of f on random pairs over a prefix");
  std::size_t pairs = 50, prefix_len = 300;
  std::uint64_t seed = 1;
  long max_den = 120;
  l1->add_option("--pairs", pairs, "Number of random pairs");
  l1->add_option("--prefix", prefix_len, "Prefix length");
  l1->add_option("--seed", seed, "Seed for the pairs");
  l1->add_option("--max-den", max_den, "Largest denominator")->check(CLI::Range(1L, 1000000L));
  l1->callback([&] {
    action = [&] {
      const auto prefix = enumerate_index(prefix_len);
      std::mt19937_64 eng(seed);
      std::size_t with_c = 0, violations = 0, witness_failures = 0;
      Json failures = Json::array();
      for (std::size_t t = 0; t < pairs; ++t) {
        const Q1 x = random_q1(eng, max_den);
        const Q1 y = random_q1(eng, max_den);
        const AdditivityReport rep = check_additivity(x, y, prefix);
        with_c += !rep.discrepancies.empty();
        violations += rep.violations.size();
        witness_failures += !rep.witness_ok;
        if (!rep.ok()) failures.push_back(to_json(rep));
      }
      Json j;
      j["prefix"] = prefix_len;
      j["pairs"] = pairs;
      j["seed"] = seed;
      j["max_den"] = max_den;
      j["pairs_with_discrepancies"] = with_c;
      j["violations"] = violations;
      j["witness_failures"] = witness_failures;
      j["failures"] = std::move(failures);
      return Outcome{dump(j), violations == 0 && witness_failures == 0 ? kOk : kDomainError};
    };
  });

  auto* ref = app.add_subcommand("refute", "Trend of the discrepancy sets Delta_x for a homomorphism");
  std::string samples_text;
  ref->add_option("--g", g_spec, "zero, identity, seed:S:C or list:c1,c2,...");
  ref->add_option("--samples", samples_text, "Comma-separated points (default: denominators <= 64)");
  ref->add_option("--m-max", m_max, "Longest prefix")->required();
  ref->add_option("--checkpoints", marks_text, "Comma-separated prefix lengths");
  ref->callback([&] {
    action = [&] {
      const MultiplierHom g = MultiplierHom::parse(g_spec);
      const auto samples = samples_text.empty() ? default_samples() : parse_q1_list(samples_text);
      const auto marks = checkpoints_for(marks_text, m_max);
      const auto prefix = enumerate_index(m_max);
      const RefutationReport rep =
          refute(g, samples, prefix, marks, pierce_options(size_limit, true), threads);
      return Outcome{want_csv ? refutation_csv(rep) : dump(to_json(rep))};
    };
  });

  auto* self = app.add_subcommand("selftest", "Run the acceptance suites");
  std::size_t self_m_max = acceptance::kRefuteMMax;
  std::string skip_text;
  self->add_option("--m-max", self_m_max, "Prefix length for the refutation suite");
  self->add_option("--skip", skip_text, "Comma-separated criterion numbers to leave out");
  self->callback([&] {
    action = [&] {
      acceptance::Config cfg;
      cfg.refute_m_max = self_m_max;
      cfg.threads = threads;
      if (!skip_text.empty())
        for (std::size_t id : parse_size_list(skip_text)) cfg.skip.insert(static_cast<int>(id));
      std::string text;
      std::size_t failed = 0;
      for (const auto& r : acceptance::run(cfg)) {
        text += acceptance::format(r) + "\n";
        failed += !r.pass;
      }
      text += failed == 0 ? "ALL PASS\n" : std::to_string(failed) + " FAILED\n";
      return Outcome{text, failed == 0 ? kOk : kDomainError};
    };
  });

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kOk;
    }
    err << "error: " << e.what() << "\n";
    return kMalformed;
  }

  Outcome result;
  try {
    result = action();
  } catch (const MalformedInput& e) {
    err << "malformed input: " << e.what() << "\n";
    return kMalformed;
  } catch (const MalformedSystem& e) {
    err << "malformed system: " << e.what() << "\n";
    return kMalformed;
  } catch (const std::invalid_argument& e) {
    err << "invalid argument: " << e.what() << "\n";
    return kMalformed;
  } catch (const nlohmann::json::exception& e) {
    err << "malformed input: " << e.what() << "\n";
    return kMalformed;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kDomainError;
  }

  if (out_path.empty()) {
    out << result.text;
  } else {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) {
      err << "cannot write " << out_path << "\n";
      return kMalformed;
    }
    f << result.text;
  }
  return result.code;
}

}  // namespace nonrn::cli
