#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "cat0/cli.hpp"

using nlohmann::json;

namespace {

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = cat0::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string chomp(std::string s) {
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
  return s;
}

// Every success line the tool prints must parse back as JSON.
json parse_line(const RunResult& r) {
  REQUIRE_FALSE(r.out.empty());
  return json::parse(r.out);
}

}  // namespace

TEST_CASE("surface subcommands print exact integer reports") {
  RunResult lick = run({"lickorish", "--genus", "2"});
  CHECK(lick.code == 0);
  CHECK(chomp(lick.out) ==
        "{\"genus\":2,\"curves\":[\"a1\",\"a2\",\"b1\",\"b2\",\"c1\"],"
        "\"intersections\":[[\"a1\",\"b1\",1],[\"a2\",\"b2\",1],[\"c1\",\"b1\",1],[\"c1\",\"b2\",-1]]}");

  RunResult twist = run({"twist-matrix", "--genus", "1", "--curve", "a1"});
  CHECK(twist.code == 0);
  CHECK(chomp(twist.out) == "{\"curve\":\"a1\",\"entries\":[[1,-1],[0,1]]}");

  RunResult rel = run({"check-relations", "--genus", "3"});
  CHECK(rel.code == 0);
  CHECK(chomp(rel.out) == "{\"genus\":3,\"commuting\":21,\"braid\":7,\"ok\":true}");

  RunResult prop = run({"verify-prop52", "--genus", "2"});
  CHECK(prop.code == 0);
  CHECK(chomp(prop.out) ==
        "{\"genus\":2,\"checked\":15,\"satisfied\":12,\"degenerate\":3,\"violations\":[]}");

  RunResult nbhd = run({"neighborhood", "--genus", "2", "--curves", "a1,b1"});
  CHECK(nbhd.code == 0);
  CHECK(chomp(nbhd.out) ==
        "{\"genus\":2,\"curves\":[\"a1\",\"b1\"],\"connected\":true,"
        "\"ribbon\":[{\"curves\":[\"a1\",\"b1\"],\"intersections\":1,\"chi\":-1,"
        "\"boundary\":1,\"genus\":1,\"separating\":false}],"
        "\"complement\":[{\"chi\":-1,\"boundary\":1,\"genus\":1,\"disk\":false}]}");

  RunResult wit = run({"witness-copies", "--genus", "3", "--type-genus", "1", "--type-boundary",
                       "1", "--copies", "3"});
  CHECK(wit.code == 0);
  CHECK(chomp(wit.out) ==
        "{\"found\":true,\"witness\":{\"type\":{\"genus\":1,\"boundary\":1},"
        "\"blocks\":[[0,3],[1,4],[2,5]],\"strips\":[]}}");

  RunResult none = run({"witness-copies", "--genus", "3", "--type-genus", "2", "--type-boundary",
                        "1", "--copies", "2"});
  CHECK(none.code == 0);
  CHECK(chomp(none.out) == "{\"found\":false}");

  for (const RunResult* r : {&lick, &twist, &rel, &prop, &nbhd, &wit, &none}) {
    CHECK_FALSE(parse_line(*r).is_null());
  }
}

TEST_CASE("classify lines") {
  RunResult hyp = run({"classify", "--json", "[[2,0],[0,\"1/2\"]]"});
  CHECK(hyp.code == 0);
  CHECK(chomp(hyp.out) ==
        "{\"class\":\"hyperbolic\",\"translation_length\":1.38629436112,\"attained\":true}");

  RunResult shear = run({"classify", "--json", "[[1,1],[0,1]]"});
  CHECK(shear.code == 0);
  CHECK(chomp(shear.out) ==
        "{\"class\":\"neutral-parabolic\",\"translation_length\":0,\"attained\":false}");

  RunResult rot = run({"classify", "--json", "{\"entries\":[[0,-1],[1,0]]}"});
  CHECK(rot.code == 0);
  json j = parse_line(rot);
  CHECK(j["class"] == "elliptic");
  CHECK(j["attained"] == true);

  RunResult bad = run({"classify", "--json", "[[2,0],[0,2]]"});
  CHECK(bad.code == 1);
  json e = parse_line(bad);
  CHECK(e.contains("error"));
  CHECK_FALSE(e["error"]["message"].get<std::string>().empty());
}

TEST_CASE("distance and circumcenter") {
  RunResult d = run({"distance", "--json",
                     "{\"space\":{\"kind\":\"siegel\",\"g\":1},"
                     "\"p\":{\"re\":[[0]],\"im\":[[1]]},\"q\":{\"re\":[[0]],\"im\":[[4]]}}"});
  CHECK(d.code == 0);
  CHECK(chomp(d.out) == "{\"distance\":1.38629436112}");

  RunResult c = run({"circumcenter", "--json",
                     "{\"space\":{\"kind\":\"euclidean\",\"dim\":2},"
                     "\"points\":[{\"coords\":[0,0]},{\"coords\":[1,0]},"
                     "{\"coords\":[0.5,0.8660254037844386]}]}"});
  CHECK(c.code == 0);
  json j = parse_line(c);
  CHECK(j["radius"].get<double>() == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-6));
  CHECK(j["center"]["coords"][0].get<double>() == doctest::Approx(0.5).epsilon(1e-6));

  RunResult tree_mid = run({"distance", "--json",
                            "{\"space\":{\"kind\":\"tree\",\"vertices\":3,"
                            "\"edges\":[[0,1,1.0],[1,2,2.0]]},"
                            "\"p\":{\"edge\":0,\"offset\":0.5},\"q\":{\"edge\":1,\"offset\":1.5}}"});
  CHECK(tree_mid.code == 0);
  CHECK(chomp(tree_mid.out) == "{\"distance\":2}");
}

TEST_CASE("derive, verify, and tampering through the command line") {
  const char* cert_path = "/tmp/cat0_cli_cert.json";
  RunResult der = run({"derive", "--genus", "3", "--dim", "2", "--out", cert_path});
  CHECK(der.code == 0);
  json j = parse_line(der);
  CHECK(j["ok"] == true);
  CHECK(j["genus"] == 3);
  CHECK(j["dim"] == 2);
  CHECK(j["facts"] == 93);
  CHECK(j["out"] == cert_path);

  RunResult ver = run({"verify", cert_path});
  CHECK(ver.code == 0);
  CHECK(chomp(ver.out) == "{\"valid\":true}");

  // Corrupt one premise id in place: still exit 0, but flagged with location.
  std::ifstream in(cert_path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  in.close();
  size_t pos = text.find("\"rule\":\"HELLY_FINISH\"");
  REQUIRE(pos != std::string::npos);
  size_t kpos = text.find("\"k\":3", pos);
  REQUIRE(kpos != std::string::npos);
  text.replace(kpos, 5, "\"k\":2");
  std::ofstream out(cert_path);
  out << text;
  out.close();
  RunResult bad = run({"verify", cert_path});
  CHECK(bad.code == 0);
  json vb = parse_line(bad);
  CHECK(vb["valid"] == false);
  CHECK(vb["fact"].get<long long>() >= 0);
  CHECK_FALSE(vb["message"].get<std::string>().empty());

  // Malformed JSON is an input error, not a verification verdict.
  std::ofstream trunc(cert_path);
  trunc << "{\"v\":1,\"context\"";
  trunc.close();
  RunResult mal = run({"verify", cert_path});
  CHECK(mal.code == 1);
  json me = parse_line(mal);
  CHECK(me.contains("error"));

  std::remove(cert_path);
}

TEST_CASE("derive failure is a structured error") {
  RunResult r = run({"derive", "--genus", "3", "--dim", "3", "--out", "/tmp/cat0_cli_never.json"});
  CHECK(r.code == 1);
  json j = parse_line(r);
  CHECK(j["error"]["stage"] == "disjoint-copies");
  CHECK(j["error"]["subset"] == json::array({0, 3}));
  CHECK_FALSE(j["error"]["message"].get<std::string>().empty());

  RunResult pre = run({"derive", "--genus", "2", "--dim", "1", "--out", "/tmp/cat0_cli_never.json"});
  CHECK(pre.code == 1);
  CHECK(parse_line(pre)["error"]["stage"] == "preconditions");
}

TEST_CASE("helly subcommands") {
  RunResult tree = run({"helly-tree", "--json",
                        "{\"tree\":{\"vertices\":3,\"edges\":[[0,1,1.0],[1,2,1.0]]},"
                        "\"sets\":[{\"intervals\":[[0,0,1]]},{\"intervals\":[[1,0,1]]},"
                        "{\"vertices\":[1]}]}"});
  CHECK(tree.code == 0);
  CHECK(chomp(tree.out) ==
        "{\"pairwise\":true,\"all\":true,\"disjoint_pair\":null,"
        "\"common_point\":{\"edge\":0,\"offset\":1}}");

  RunResult far = run({"helly-tree", "--json",
                       "{\"tree\":{\"vertices\":3,\"edges\":[[0,1,1.0],[1,2,1.0]]},"
                       "\"sets\":[{\"intervals\":[[0,0,0.25]]},{\"intervals\":[[1,0.75,1]]}]}"});
  CHECK(far.code == 0);
  json fj = parse_line(far);
  CHECK(fj["pairwise"] == false);
  CHECK(fj["disjoint_pair"] == json::array({0, 1}));
  CHECK(fj["common_point"].is_null());

  RunResult euc = run({"helly-euclid", "--json",
                       "{\"dim\":1,\"sets\":[{\"a\":[[1],[-1]],\"b\":[1,0]},"
                       "{\"a\":[[1],[-1]],\"b\":[3,-2]}]}"});
  CHECK(euc.code == 0);
  CHECK(chomp(euc.out) ==
        "{\"subsets_feasible\":false,\"all_feasible\":false,"
        "\"infeasible_subset\":[0,1],\"common_point\":null}");

  RunResult unb = run({"helly-euclid", "--json",
                       "{\"dim\":2,\"sets\":[{\"a\":[[1,0]],\"b\":[1]}]}"});
  CHECK(unb.code == 1);
  CHECK(chomp(unb.out) == "{\"error\":{\"message\":\"polyhedron 0 is unbounded\"}}");

  RunResult empty = run({"helly-euclid", "--json",
                         "{\"dim\":1,\"sets\":[{\"a\":[[1],[-1]],\"b\":[0,-1]}]}"});
  CHECK(empty.code == 1);
  CHECK(chomp(empty.out) == "{\"error\":{\"message\":\"polyhedron 0 is empty\"}}");
}

TEST_CASE("usage errors exit with code two") {
  CHECK(run({}).code == 2);
  CHECK(run({"no-such-command"}).code == 2);
  CHECK(run({"lickorish"}).code == 2);                       // missing --genus
  CHECK(run({"lickorish", "--genus", "2", "--bogus"}).code == 2);
  CHECK(run({"classify"}).code == 2);                        // needs --in or --json
  CHECK(run({"derive", "--genus", "3"}).code == 2);          // missing --dim/--out
  RunResult both = run({"classify", "--json", "[[1,0],[0,1]]", "--in", "/tmp/x.json"});
  CHECK(both.code == 2);
  // Usage errors go to stderr, not stdout.
  RunResult miss = run({"lickorish"});
  CHECK(miss.out.empty());
  CHECK_FALSE(miss.err.empty());
}

TEST_CASE("domain errors exit with code one and a JSON envelope") {
  RunResult r = run({"lickorish", "--genus", "0"});
  CHECK(r.code == 1);
  json j = parse_line(r);
  CHECK(j.contains("error"));

  RunResult badcurve = run({"neighborhood", "--genus", "2", "--curves", "a1,z9"});
  CHECK(badcurve.code == 1);
  CHECK(parse_line(badcurve)["error"]["message"] == "unknown curve 'z9'");

  RunResult badjson = run({"classify", "--json", "[[1,"});
  CHECK(badjson.code == 1);
  CHECK(parse_line(badjson).contains("error"));

  RunResult nofile = run({"verify", "/tmp/cat0_cli_missing_file.json"});
  CHECK(nofile.code == 1);
}

TEST_CASE("help succeeds and mentions the subcommands") {
  RunResult r = run({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("classify") != std::string::npos);
  CHECK(r.out.find("helly-tree") != std::string::npos);
  CHECK(r.out.find("derive") != std::string::npos);
}

TEST_CASE("seed flag is accepted and output stays deterministic") {
  RunResult a = run({"--seed", "7", "lickorish", "--genus", "3"});
  RunResult b = run({"--seed", "8", "lickorish", "--genus", "3"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);

  std::vector<std::string> argv{"verify-prop52", "--genus", "3"};
  RunResult first = run(argv);
  RunResult second = run(argv);
  CHECK(first.code == 0);
  CHECK(first.out == second.out);
  CHECK(first.err == second.err);
}
