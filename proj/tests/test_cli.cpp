#include <cstdio>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"

using nonrn::cli::run_command;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_command(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& text) {
  const std::string path = "cli_test_" + name;
  std::ofstream(path) << text;
  return path;
}

}  // namespace

TEST_CASE("from-points prints the two-ball element") {
  const auto r = run({"from-points", "0/1,1/2"});
  CHECK(r.code == 0);
  CHECK(r.out ==
        "{\"n\":2,\"balls\":[{\"c\":\"0/1\",\"r\":\"1/8\"},{\"c\":\"1/2\",\"r\":\"1/8\"}],"
        "\"points\":[\"0/1\",\"1/2\"]}\n");
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"from-points", "0/1,x"}).code == 2);
  CHECK(run({"from-points", "1/3,1/3"}).code == 1);
  CHECK(run({"pierce", "no_such_file.json"}).code == 2);
  CHECK(run({"gen-index"}).code == 2);
  CHECK(run({"gen-index", "--help"}).code == 0);

  const auto bad = run({"from-points", "0/1,1/0"});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("position") != std::string::npos);
}

TEST_CASE("pierce and validate-index on files") {
  const std::string empty = temp_file("empty.json", "[]");
  CHECK(run({"pierce", empty}).out == "{\"size\":0,\"witness\":[]}\n");

  const std::string a0 = temp_file("a0.json", run({"from-points", "0/1,1/2"}).out);
  const auto p = run({"pierce", a0});
  CHECK(p.code == 0);
  CHECK(p.out == "{\"size\":1,\"witness\":[\"1/8\"]}\n");

  const auto v = run({"validate-index", a0});
  CHECK(v.code == 0);
  CHECK(v.out.find("\"ok\":true") != std::string::npos);

  const std::string broken = temp_file(
      "broken.json",
      "{\"n\":2,\"balls\":[{\"c\":\"0/1\",\"r\":\"1/8\"},{\"c\":\"1/2\",\"r\":\"1/8\"}],"
      "\"points\":[\"0/1\",\"7/16\"]}");
  const auto vb = run({"validate-index", broken});
  CHECK(vb.code == 1);
  CHECK(vb.out.find("additivity") != std::string::npos);

  const auto f = run({"eval-f", a0, "7/16"});
  CHECK(f.out == "{\"x\":\"7/16\",\"f\":[\"15/16\"]}\n");

  const std::string prefix = temp_file("prefix.json", run({"gen-index", "--count", "40"}).out);
  CHECK(run({"--size-limit", "10", "pierce", prefix}).code == 1);
  const auto h = run({"--size-limit", "10", "pierce", prefix, "--heuristic"});
  CHECK(h.code == 0);
  CHECK(h.out.find("heuristic") != std::string::npos);
  for (const char* name : {"empty.json", "a0.json", "broken.json", "prefix.json"})
    std::remove(("cli_test_" + std::string(name)).c_str());
}

TEST_CASE("solve-system") {
  const std::string sat = temp_file(
      "sat.json", "{\"B\":[[2]],\"r\":[\"1/3\"],\"balls\":[{\"c\":\"1/6\",\"r\":\"1/10\"}]}");
  const auto s = run({"solve-system", sat});
  CHECK(s.code == 0);
  CHECK(s.out == "[\"1/6\"]\n");
  const std::string unsat = temp_file(
      "unsat.json", "{\"B\":[[2]],\"r\":[\"1/3\"],\"balls\":[{\"c\":\"0/1\",\"r\":\"1/10\"}]}");
  const auto u = run({"solve-system", unsat});
  CHECK(u.code == 0);
  CHECK(u.out == "UNSAT\n");
  const std::string bad = temp_file("bad.json", "{\"B\":[[2]],\"r\":[],\"balls\":[]}");
  CHECK(run({"solve-system", bad}).code == 2);
  for (const char* name : {"sat.json", "unsat.json", "bad.json"})
    std::remove(("cli_test_" + std::string(name)).c_str());
}

TEST_CASE("trend and refute outputs") {
  const auto t = run({"ideal-trend", "--family", "empty", "--m-max", "100", "--checkpoints", "10,50,100"});
  CHECK(t.code == 0);
  CHECK(t.out == "m,p_m\n10,0\n50,0\n100,0\nverdict,bounded-looking\n");
  CHECK(run({"ideal-trend", "--family", "nope", "--m-max", "10"}).code == 2);
  CHECK(run({"ideal-trend", "--family", "all", "--m-max", "10", "--checkpoints", "20"}).code == 2);

  const auto j = run({"refute", "--g", "identity", "--samples", "0/1,1/5", "--m-max", "50"});
  CHECK(j.code == 0);
  CHECK(j.out.rfind("{\"format\":\"nonrn/1\",\"g\":\"identity\"", 0) == 0);
  const auto c = run({"--csv", "refute", "--samples", "0/1", "--m-max", "8", "--checkpoints", "4,8"});
  CHECK(c.out == "x,m,p_m\n0/1,4,0\n0/1,8,0\n");
  CHECK(run({"refute", "--g", "seed:x", "--m-max", "8"}).code == 2);

  const auto l1 = run({"check-l1", "--pairs", "5", "--prefix", "60"});
  CHECK(l1.code == 0);
  CHECK(l1.out.find("\"violations\":0") != std::string::npos);
}

TEST_CASE("--out writes a file") {
  const std::string path = "cli_test_out.json";
  const auto r = run({"--out", path, "from-points", "1/4"});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  CHECK(buf.str() == "{\"n\":1,\"balls\":[{\"c\":\"1/4\",\"r\":\"1/16\"}],\"points\":[\"1/4\"]}\n");
  std::remove(path.c_str());
}
