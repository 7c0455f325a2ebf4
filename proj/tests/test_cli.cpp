#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "autorb/cli.hpp"

using namespace autorb;
using nlohmann::json;

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("omega json output is stable and byte-identical across runs") {
  auto r1 = run({"omega", "EA(2,2)", "--json"});
  auto r2 = run({"omega", "EA(2,2)", "--json"});
  CHECK(r1.code == 0);
  CHECK(r1.out == r2.out);
  CHECK(r1.out ==
        "{\"group\":\"EA(2,2)\",\"order\":4,\"omega\":{\"lo\":2,\"hi\":2,"
        "\"status\":\"certified\"},\"trusted\":[],\"orbit_sizes\":[1,3]}\n");
}

TEST_CASE("omega values through the CLI") {
  auto r = run({"omega", "ASL(2,4)", "--json"});
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["group"] == "ASL(2,4)");
  CHECK(j["order"] == 960);
  CHECK(j["omega"]["lo"] == 6);
  CHECK(j["omega"]["hi"] == 6);
  CHECK(j["omega"]["status"] == "certified");
  int64_t total = 0;
  for (const auto& s : j["orbit_sizes"]) total += s.get<int64_t>();
  CHECK(total == 960);
}

TEST_CASE("explicit level disables escalation and reports bounds honestly") {
  auto r = run({"omega", "ASL(2,4)", "--level", "1", "--json"});
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["omega"]["lo"] == 5);  // order census alone undercounts
  CHECK(j["omega"]["hi"] == 6);
  CHECK(j["omega"]["status"] == "bounds");
}

TEST_CASE("exact flag reports the automorphism group order") {
  auto r = run({"omega", "EA(2,2)", "--exact", "--json"});
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["aut_order"] == 6);
  CHECK(j["omega"]["status"] == "certified");

  // A6 fits under the default limit; its exact count matches PSL(2,9).
  auto a6 = run({"omega", "A(6)", "--exact", "--json"});
  CHECK(a6.code == 0);
  json ja = json::parse(a6.out);
  CHECK(ja["omega"]["lo"] == 5);
  CHECK(ja["aut_order"] == 1440);

  auto too_big = run({"omega", "S(6)", "--exact", "--json"});  // 720 > 512
  CHECK(too_big.code == 3);
}

TEST_CASE("orbits command") {
  auto r = run({"orbits", "EA(2,2)", "--json"});
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["orbits"].size() == 2);
  CHECK(j["orbits"][0]["size"] == 1);
  CHECK(j["orbits"][1]["size"] == 3);

  auto a5 = run({"orbits", "A(5)", "--json"});
  json ja = json::parse(a5.out);
  CHECK(ja["orbits"].size() == 4);
  std::multiset<int64_t> sizes;
  int64_t total = 0;
  for (const auto& o : ja["orbits"]) {
    sizes.insert(o["size"].get<int64_t>());
    total += o["size"].get<int64_t>();
  }
  CHECK(sizes == std::multiset<int64_t>{1, 15, 20, 24});
  CHECK(total == 60);
}

TEST_CASE("orbits csv") {
  auto r = run({"orbits", "EA(2,2)", "--csv"});
  CHECK(r.code == 0);
  CHECK(r.out ==
        "group,order,orbit_index,size,elem_order,cent_order\n"
        "EA(2,2),4,0,1,1,4\n"
        "EA(2,2),4,1,3,2,4\n");
}

TEST_CASE("parse and usage errors exit 2") {
  CHECK(run({"omega", "PSL(2)"}).code == 2);
  CHECK(run({"omega", "FOO(1)"}).code == 2);
  CHECK(run({"omega"}).code == 2);
  CHECK(run({"bogus"}).code == 2);
  CHECK(run({"verify", "paper", "--suite", "nope"}).code == 2);
  CHECK(run({"verify", "other"}).code == 2);
  auto r = run({"omega", "PSL(2,"});
  CHECK(r.code == 2);
  CHECK(r.err.find("error") != std::string::npos);
}

TEST_CASE("resource caps exit 3") {
  setenv("AUTORB_CAP", "100", 1);
  auto r = run({"omega", "POW(A(5),2)"});
  unsetenv("AUTORB_CAP");
  CHECK(r.code == 3);
}

TEST_CASE("help exits 0") {
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("verify subcommand emits a machine-readable report") {
  auto r = run({"verify", "paper", "--suite", "stroppel", "--json"});
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["suite"] == "stroppel");
  CHECK(j["overall"] == "pass");
  CHECK(j["checks"].size() == 2);
  for (const auto& c : j["checks"]) {
    CHECK(c.contains("id"));
    CHECK(c.contains("location"));
    CHECK(c.contains("expected"));
    CHECK(c.contains("computed"));
    CHECK(c.contains("status"));
    CHECK(c.contains("wall_ms"));
  }
}

TEST_CASE("verify report is schema-stable modulo timing") {
  auto scrub = [](const std::string& text) {
    json j = json::parse(text);
    for (auto& c : j["checks"]) c["wall_ms"] = 0;
    return j;
  };
  auto r1 = run({"verify", "paper", "--suite", "lemma22", "--json"});
  auto r2 = run({"verify", "paper", "--suite", "lemma22", "--json", "--parallel"});
  CHECK(r1.code == 0);
  CHECK(r2.code == 0);
  CHECK(scrub(r1.out) == scrub(r2.out));
}

TEST_CASE("out flag writes to a file") {
  std::string path = "/tmp/autorb_cli_test_out.json";
  auto r = run({"omega", "EA(2,2)", "--json", "--out", path});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  json j = json::parse(ss.str());
  CHECK(j["omega"]["lo"] == 2);
  std::remove(path.c_str());
}
