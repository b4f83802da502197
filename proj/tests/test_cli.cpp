#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "tropdiv/families.hpp"
#include "tropdiv/io.hpp"

using namespace tropdiv;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& contents) {
  std::string path = std::string(TROPDIV_TEST_TMP) + "/" + name;
  std::ofstream(path) << contents;
  return path;
}

const std::string kDhar = std::string(TROPDIV_TEST_DATA) + "/dhar.json";

}  // namespace

TEST_CASE("worked example reduction") {
  auto r = call({"reduce", "--graph", kDhar, "--divisor", "v1:1,v2:1", "--at", "v5", "--text"});
  CHECK(r.code == 0);
  CHECK(r.out == "v4:1,v5:1\n");
  auto t = call({"reduce", "--graph", kDhar, "--divisor", "v1:1,v2:1", "--at", "v5", "--trace", "--finite"});
  Json j = Json::parse(t.out);
  CHECK(j["trace"] == Json::parse(R"([["v1","v2"],["v1","v2","v3"]])"));
}

TEST_CASE("spot values") {
  auto jac = Json::parse(call({"jacobian", "--graph", "family:k4"}).out);
  CHECK(jac["order"] == "16");
  CHECK(jac["invariant_factors"] == Json::parse(R"(["4","4"])"));
  CHECK(call({"chain", "count", "--g", "4", "--r", "1", "--d", "3", "--text"}).out == "2\n");
  CHECK(call({"chain", "count", "--g", "6", "--r", "1", "--d", "4", "--text"}).out == "5\n");
  auto trees = Json::parse(call({"trees", "--graph", "family:petersen"}).out);
  CHECK(trees["determinant"] == "2000");
  CHECK(trees["enumerated"] == 2000);
  CHECK(Json::parse(call({"genus", "--graph", "family:banana:4"}).out)["genus"] == 4);
  auto rank = Json::parse(call({"rank", "--graph", "family:hyperelliptic3", "--divisor", "a:1,b:1"}).out);
  CHECK(rank["rank"] == 1);
  CHECK(rank["certificate_ok"] == true);
}

TEST_CASE("divisor outputs round-trip through the parser") {
  MetricGraph g = graph_from_json(load_json_file(kDhar));
  auto r = call({"reduce", "--graph", kDhar, "--divisor", "v1:3,v2:-1", "--at", "v4"});
  REQUIRE(r.code == 0);
  Json j = Json::parse(r.out);
  Divisor d = divisor_from_json(g, j["reduced"]);
  CHECK(format_divisor(g.model(), d) == j["reduced"]["text"]);
  PLFunction f = plfunction_from_json(g, j["witness"]);
  CHECK(f.div(g) == d - parse_divisor(g, "v1:3,v2:-1"));
  // JSON divisor files are accepted wherever text is.
  std::string path = temp_file("d.json", j["reduced"].dump());
  auto again = call({"canonical", "--graph", kDhar});
  CHECK(again.code == 0);
  auto eq = Json::parse(call({"equiv", "--graph", kDhar, "--divisor", "@" + path, "--other", "v1:3,v2:-1"}).out);
  CHECK(eq["equivalent"] == true);
  PLFunction w = plfunction_from_json(g, eq["witness"]);
  CHECK(d + w.div(g) == parse_divisor(g, "v1:3,v2:-1"));
}

TEST_CASE("exit codes") {
  CHECK(call({}).code == 2);
  CHECK(call({"frobnicate"}).code == 2);
  CHECK(call({"examples", "--id", "no-such-fixture"}).code == 2);
  CHECK(call({"genus", "--graph", "/nonexistent.json"}).code == 2);
  auto bad = call({"genus", "--graph", temp_file("bad.json", "{\n \"vertices\": [\n  {\"id\": 1}\n ],\n \"edges\": []\n}")});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("vertices[0].id") != std::string::npos);
  auto broken = call({"genus", "--graph", temp_file("broken.json", "{\n \"vertices\": [,\n}")});
  CHECK(broken.code == 2);
  CHECK(broken.err.find("broken.json:2:") != std::string::npos);
  // Domain errors: break rep needs degree g.
  CHECK(call({"break", "rep", "--graph", "family:k4", "--divisor", "v1:1"}).code == 1);
  CHECK(call({"chain", "cells", "--g", "3", "--r", "0", "--d", "5"}).code == 1);
  CHECK(call({"examples"}).code == 0);
  CHECK(call({"examples", "--id", "dhar-reduce"}).code == 0);
}

TEST_CASE("single fixture selection") {
  auto r = call({"examples", "--id", "dhar-burn"});
  Json j = Json::parse(r.out);
  REQUIRE(j["fixtures"].size() == 1);
  CHECK(j["fixtures"][0]["id"] == "dhar-burn");
  CHECK(j["pass"] == true);
}

TEST_CASE("manifests replay byte for byte") {
  std::string m = std::string(TROPDIV_TEST_TMP) + "/run.json";
  auto first = call({"rr-check", "--graph", kDhar, "--random", "5", "--seed", "7", "--finite", "--manifest", m});
  REQUIRE(first.code == 0);
  Json manifest = load_json_file(m);
  CHECK(manifest["output"] == first.out);
  CHECK(manifest["seed"] == 7);
  CHECK(manifest["inputs"][0]["path"] == kDhar);
  auto replay = call({"replay", m});
  CHECK(replay.code == 0);
  CHECK(Json::parse(replay.out)["identical"] == true);
  // Same seed, same bytes; a different seed changes the sample.
  CHECK(call({"rr-check", "--graph", kDhar, "--random", "5", "--seed", "7", "--finite"}).out == first.out);
  CHECK(call({"rr-check", "--graph", kDhar, "--random", "5", "--seed", "8", "--finite"}).out != first.out);
  manifest["output"] = "tampered";
  std::ofstream(m) << manifest.dump();
  CHECK(call({"replay", m}).code == 1);
}

TEST_CASE("other subcommands produce parseable output") {
  std::vector<std::vector<std::string>> runs{
      {"canonical", "--graph", "family:banana:3"},
      {"fire", "--graph", kDhar, "--divisor", "v1:1,v2:1", "--set", "v1,v2"},
      {"rr-check", "--graph", "family:k4", "--divisor", "v1:2"},
      {"cliff", "--graph", "family:hyperelliptic3", "--divisor", "a:1,b:1"},
      {"cliff", "--graph", "family:hyperelliptic3", "--index"},
      {"gonality", "--graph", "family:k4", "--max-degree", "3"},
      {"bn-rank", "--graph", "family:k4", "--r", "1", "--d", "3"},
      {"weierstrass", "--graph", "family:banana:3", "--point", "e1@1/2"},
      {"weierstrass", "--graph", "family:banana:2", "--grid", "2"},
      {"period-gram", "--graph", "family:theta"},
      {"abel-jacobi", "--graph", "family:circle", "--divisor", "e1@1/3:1,O:-1", "--base", "O"},
      {"zhang", "--graph", "family:theta"},
      {"break", "enumerate", "--graph", "family:k4"},
      {"break", "rep", "--graph", "family:k4", "--divisor", "v1:3"},
      {"break", "check", "--graph", "family:theta", "--divisor", "e1@1/2:1,e2@1/2:1"},
      {"chain", "cells", "--g", "4", "--r", "1", "--d", "3"},
      {"chain", "sample", "--g", "3", "--r", "1", "--d", "3", "--cell", "1"},
      {"chain", "adjoint", "--g", "4", "--r", "1", "--d", "3"},
  };
  for (const auto& args : runs) {
    CAPTURE(args[0]);
    auto r = call(args);
    CHECK(r.code == 0);
    CHECK(Json::accept(r.out));
  }
  CHECK(Json::parse(call({"bn-rank", "--graph", "family:k4", "--r", "1", "--d", "3"}).out)["w"] == 1);
  CHECK(Json::parse(call({"weierstrass", "--graph", "family:banana:3", "--point", "e1@1/2"}).out)["weierstrass"] == true);
  // The circle's single period is 1; p - O sits at -1/3 with this orientation.
  auto aj = Json::parse(call({"abel-jacobi", "--graph", "family:circle", "--divisor", "e1@1/3:1,O:-1", "--base", "O"}).out);
  CHECK(aj["lattice_coords"] == Json::parse(R"(["2/3"])"));
  CHECK(aj["in_lattice"] == false);
  aj = Json::parse(call({"abel-jacobi", "--graph", "family:circle", "--divisor", "e1@1/3:3,O:-3", "--base", "O"}).out);
  CHECK(aj["in_lattice"] == true);
  CHECK(Json::parse(call({"chain", "adjoint", "--g", "4", "--r", "1", "--d", "3"}).out)["transpose_holds"] == true);
  auto csv = call({"zhang", "--graph", "family:circle", "--format", "csv"});
  CHECK(csv.out == "kind,id,mass\nedge,e1,1/2\nedge,e2,1/2\n");
}

TEST_CASE("tropical dependence certificate from a file") {
  MetricGraph seg = MetricGraph::unit(families::path(2));
  Json fs = Json::array();
  for (auto [a, b] : {std::pair{"0", "1"}, std::pair{"1", "0"}, std::pair{"0", "0"}})
    fs.push_back({{"values", {{{"at", "v1"}, {"value", a}}, {{"at", "v2"}, {"value", b}}}}});
  std::string graph = temp_file("seg.json", graph_to_json(seg).dump());
  std::string dep = temp_file("dep.json", Json{{"functions", fs}, {"shifts", {"0", "0", "0"}}}.dump());
  auto r = Json::parse(call({"tropdep", "--graph", graph, "--functions", dep}).out);
  CHECK(r.contains("dependent"));
  std::string lone = temp_file("lone.json", Json{{"functions", Json::array({fs[0]})}}.dump());
  CHECK(Json::parse(call({"tropdep", "--graph", graph, "--functions", lone}).out)["dependent"] == false);
}
