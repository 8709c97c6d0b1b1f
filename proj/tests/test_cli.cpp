#include <doctest.h>

#include "adestar/cli.hpp"
#include "adestar/io.hpp"

#include <cstdlib>
#include <filesystem>
#include <sstream>

using namespace adestar;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result call(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) { return (std::filesystem::temp_directory_path() / ("adestar_cli_" + name)).string(); }

}  // namespace

TEST_CASE("usage errors exit with 1") {
  CHECK(call({}).code == kExitUsage);
  CHECK(call({"group", "--kind", "BT", "--frobnicate"}).code == kExitUsage);
  CHECK(call({"nonsense"}).code == kExitUsage);
  CHECK(call({"group"}).code == kExitUsage);
  CHECK(call({"group", "--kind", "XX"}).code == kExitUsage);
  CHECK(call({"mckay", "--kind", "BT", "--emit", "xml"}).code == kExitUsage);
  CHECK(call({"domain", "--kind", "BT", "--h", "-1"}).code == kExitUsage);
  const Result r = call({"group", "--kind", "BQ"});
  CHECK(r.err.find("unknown group kind") != std::string::npos);
}

TEST_CASE("help exits with 0") {
  const Result r = call({"--help"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("selftest") != std::string::npos);
}

TEST_CASE("group output is deterministic") {
  const Result a = call({"group", "--kind", "BI"});
  const Result b = call({"group", "--kind", "BI"});
  REQUIRE(a.code == kExitOk);
  CHECK(a.out == b.out);
  const Json j = Json::parse(a.out);
  CHECK(j["order"] == 120);
  CHECK(j["elements"].size() == 120);
}

TEST_CASE("seed from the environment") {
  ::setenv("ADESTAR_SEED", "17", 1);
  CHECK(Json::parse(call({"irreps", "--kind", "BT"}).out)["seed"] == 17);
  ::setenv("ADESTAR_SEED", "not-a-seed", 1);
  CHECK(call({"irreps", "--kind", "BT"}).code == kExitUsage);
  ::unsetenv("ADESTAR_SEED");
  CHECK(Json::parse(call({"irreps", "--kind", "BT"}).out)["seed"] == 1);
  CHECK(Json::parse(call({"irreps", "--kind", "BT", "--seed", "5"}).out)["seed"] == 5);
}

TEST_CASE("mckay formats") {
  const Json j = Json::parse(call({"mckay", "--kind", "BD", "-n", "2"}).out);
  CHECK(j["type"] == "D~4");
  CHECK(j["lambda"] == Json({1, 1, 1, 1, -2}));
  CHECK(call({"mckay", "--kind", "BI", "--emit", "dot"}).out.rfind("graph", 0) == 0);
  CHECK(call({"mckay", "--kind", "BT", "--emit", "csv"}).out.rfind("vertex,name", 0) == 0);
}

TEST_CASE("selftest D4") {
  const Result r = call({"selftest", "--preset", "D4"});
  CHECK(r.code == kExitOk);
  const Json j = Json::parse(r.out);
  CHECK(j["pass"] == true);
  CHECK(j["checks"].size() > 20);
  for (const Json& c : j["checks"]) CHECK(c["pass"] == true);
}

TEST_CASE("classify E8 from the preset") {
  const Result r = call({"classify", "--preset", "E8"});
  REQUIRE(r.code == kExitOk);
  const Json j = Json::parse(r.out);
  CHECK(j["counts"] == Json({{"1", 4}, {"2", 4}, {"3", 2}}));
  CHECK(j["generic"]["dim"] == 6);
}

TEST_CASE("synth, verify, trivialize and apply-gauge through files") {
  const std::string sys = temp_path("system.json"), gauge = temp_path("gauge.json");
  REQUIRE(call({"synth", "--preset", "E6", "--seed", "2", "--out", sys}).code == kExitOk);
  CHECK(call({"verify", "--system", sys}).code == kExitOk);

  const Result rep = call({"rep-at", "--system", sys, "--point", "0.6,0,0.8"});
  CHECK(rep.code == kExitOk);
  CHECK(Json::parse(rep.out)["matrices"].size() == 3);
  CHECK(call({"rep-at", "--system", sys, "--point", "1,1"}).code == kExitUsage);

  CHECK(call({"trivialize", "--system", sys, "--h", "0.2", "--out", gauge}).code == kExitUsage);
  REQUIRE(call({"trivialize", "--system", sys, "--h", "0.1", "--out", gauge}).code == kExitOk);
  const Json g = read_json_file(gauge);
  CHECK(g["t"].size() == g["domain"]["nodes"].size());
  CHECK(g["report"]["worst"].get<double>() <= 1e-6);

  const Result t = call({"apply-gauge", "--system", sys, "--gauge", gauge, "--samples"});
  CHECK(t.code == kExitOk);
  const Json tj = Json::parse(t.out);
  CHECK(tj["report"]["worst"].get<double>() <= 1e-6);
  CHECK(tj["transported"].size() == 3);
  CHECK(call({"verify", "--system", sys, "--gauge", gauge}).code == kExitOk);

  // A corrupted coefficient is caught when recomputing from the file.
  Json bad = read_json_file(sys);
  Json& entry = bad["generators"][0]["terms"][0]["matrix"][0][0];
  entry[0] = entry[0].get<double>() + 1e-3;
  const std::string tampered = temp_path("tampered.json");
  write_json_file(tampered, bad);
  const Result v = call({"verify", "--system", tampered});
  CHECK(v.code == kExitVerification);
  CHECK(Json::parse(v.out)["pass"] == false);

  // Same for a corrupted gauge value.
  Json badg = read_json_file(gauge);
  Json& tv = badg["t"][badg["t"].size() / 2][0][0];
  tv[0] = tv[0].get<double>() + 1e-2;
  write_json_file(tampered, badg);
  CHECK(call({"verify", "--gauge", tampered}).code == kExitVerification);

  std::filesystem::remove(sys);
  std::filesystem::remove(gauge);
  std::filesystem::remove(tampered);
}

TEST_CASE("exceptional scan output") {
  const Json j = Json::parse(call({"exceptional", "--kind", "BO"}).out);
  int big = 0;
  for (const Json& e : j["exceptional"]) big += e["dim"].get<int>() > 1;
  CHECK(big == 1);
  REQUIRE(j["labelings"].size() == 2);
  CHECK(j["labelings"][0]["norm_squared"] == 4.0);
  CHECK(j["labelings"][1]["norm_squared"] == 8.0);
}
