#include "doctest.h"
#include "gen.hpp"
#include "nonrn/error.hpp"
#include "nonrn/serialize.hpp"

using namespace nonrn;

namespace {

Rational r(long p, long d) {
  Rational x(p, d);
  x.canonicalize();
  return x;
}

IndexElement a0() {
  IndexElement a;
  a.balls.emplace_back(Q1(0, 1), r(1, 8));
  a.balls.emplace_back(Q1(1, 2), r(1, 8));
  a.points = {Q1(0, 1), Q1(1, 2)};
  return a;
}

}  // namespace

TEST_CASE("index element text form") {
  CHECK(dump(to_json(a0())) ==
        "{\"n\":2,\"balls\":[{\"c\":\"0/1\",\"r\":\"1/8\"},{\"c\":\"1/2\",\"r\":\"1/8\"}],"
        "\"points\":[\"0/1\",\"1/2\"]}\n");
  CHECK(parse_index_element(parse_json_text(dump(to_json(a0())))) == a0());
  for (const auto& a : enumerate_index(300)) {
    const std::string s = dump(to_json(a));
    const IndexElement b = parse_index_element(parse_json_text(s));
    CHECK(b == a);
    CHECK(dump(to_json(b)) == s);
  }
  const auto many = enumerate_index(20);
  CHECK(parse_index_elements(parse_json_text(dump(to_json(many)))) == many);
  CHECK(parse_index_elements(parse_json_text("[]")).empty());
}

TEST_CASE("malformed index elements") {
  CHECK_THROWS_AS(parse_json_text("{\"n\":"), MalformedInput);
  CHECK_THROWS_AS(parse_index_element(parse_json_text("{\"n\":1,\"balls\":[],\"points\":[]}")),
                  MalformedInput);
  CHECK_THROWS_AS(
      parse_index_element(parse_json_text(
          "{\"n\":1,\"balls\":[{\"c\":\"0/1\",\"r\":\"1/x\"}],\"points\":[\"0/1\"]}")),
      MalformedInput);
  CHECK_THROWS_AS(
      parse_index_element(parse_json_text(
          "{\"n\":1,\"balls\":[{\"c\":0.5,\"r\":\"1/8\"}],\"points\":[\"0/1\"]}")),
      MalformedInput);
  CHECK_THROWS_AS(parse_index_elements(parse_json_text("3")), MalformedInput);
}

TEST_CASE("pierce results") {
  CHECK(dump(to_json(PierceResult{})) == "{\"size\":0,\"witness\":[]}\n");
  PierceResult p{2, {Q1(0, 1), Q1(3, 8)}, Certificate::kHeuristic};
  const auto back = parse_pierce_result(parse_json_text(dump(to_json(p))));
  CHECK(back.size == 2);
  CHECK(back.witness == p.witness);
  CHECK(back.certificate == Certificate::kHeuristic);
  CHECK_THROWS_AS(parse_pierce_result(parse_json_text("{\"size\":1,\"witness\":[]}")),
                  MalformedInput);
}

TEST_CASE("linear systems") {
  gen::Engine eng(8);
  for (int t = 0; t < 50; ++t) {
    const auto n = static_cast<std::size_t>(gen::uniform(eng, 1, 3));
    const auto m = static_cast<std::size_t>(gen::uniform(eng, 1, 3));
    LinearSystem sys;
    sys.coefficients = IntMatrix(m, n);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) sys.coefficients(i, j) = gen::uniform(eng, -9, 9);
    for (std::size_t i = 0; i < m; ++i) sys.constants.push_back(gen::q1(eng, 30));
    for (std::size_t j = 0; j < n; ++j)
      sys.constraints.emplace_back(gen::q1(eng, 30), r(gen::uniform(eng, 1, 10), 20), false);
    const std::string s = dump(to_json(sys));
    const LinearSystem back = parse_linear_system(parse_json_text(s));
    CHECK(back.coefficients == sys.coefficients);
    CHECK(back.constants == sys.constants);
    CHECK(back.constraints == sys.constraints);
    CHECK(dump(to_json(back)) == s);
  }
  CHECK_THROWS_AS(parse_linear_system(parse_json_text(
                      "{\"B\":[[1,2],[3]],\"r\":[\"0/1\",\"0/1\"],\"balls\":[]}")),
                  MalformedInput);
}

TEST_CASE("reports") {
  TrendReport t;
  t.checkpoints = {{10, 4, 1, Certificate::kExact}, {20, 9, 2, Certificate::kHeuristic}};
  t.bounded_looking = false;
  t.heuristic = true;
  const std::string s = dump(to_json(t));
  CHECK(dump(to_json(parse_trend_report(parse_json_text(s)))) == s);
  CHECK(trend_csv(t) == "m,p_m\n10,1\n20,2\nverdict,unbounded-looking\n");

  RefutationReport rep;
  rep.g = "seed:1:5";
  rep.samples = {{Q1(1, 5), t}, {Q1(1, 3), t}};
  rep.best = 1;
  rep.heuristic = true;
  const std::string rs = dump(to_json(rep));
  const auto back = parse_refutation_report(parse_json_text(rs));
  CHECK(back.best == 1);
  CHECK(dump(to_json(back)) == rs);
  CHECK(refutation_csv(rep) == "x,m,p_m\n1/5,10,1\n1/5,20,2\n1/3,10,1\n1/3,20,2\n");
}

TEST_CASE("lists") {
  CHECK(parse_q1_list("0/1,1/2") == std::vector<Q1>{Q1(0, 1), Q1(1, 2)});
  CHECK(parse_q1_list("3/2") == std::vector<Q1>{Q1(1, 2)});
  CHECK_THROWS_AS(parse_q1_list("0/1,,1/2"), MalformedInput);
  CHECK_THROWS_AS(parse_q1_list("1/0"), MalformedInput);
  CHECK(parse_size_list("1,20,300") == std::vector<std::size_t>{1, 20, 300});
  CHECK_THROWS_AS(parse_size_list("1,-2"), MalformedInput);
}
