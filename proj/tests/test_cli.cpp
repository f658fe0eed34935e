#include "doctest.h"

#include <json.hpp>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

using nlohmann::json;

namespace {

const std::string scenes = DISKOP_SCENE_DIR;

struct Run {
  int status;
  std::string out;
};

// Runs the CLI through the shell with the numeric-mode variable unset unless given.
Run cli(const std::string& args, const std::string& env = "") {
  const std::string cmd = "env -u DISKOP_NUMERIC_MODE " + env + " " + DISKOP_CLI_PATH + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  std::string out;
  std::array<char, 4096> buf{};
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  const int raw = pclose(pipe);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

json cli_json(const std::string& args, const std::string& env = "") {
  const auto r = cli("--json " + args, env);
  REQUIRE_MESSAGE(r.status == 0, r.out);
  return json::parse(r.out);
}

std::string scene(const char* name) { return "--scene " + scenes + "/" + name; }

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("validate the star example") {
  const auto j = cli_json("validate " + scene("star.json") + " --config x --level star");
  CHECK(j["valid"] == true);
  CHECK(j["highest_level"] == "star");
  const auto sep = cli_json("validate " + scene("star.json") + " --config x --level separated");
  CHECK(sep["valid"] == false);
  CHECK_FALSE(sep["violations"].empty());
  const auto human = cli("validate " + scene("star.json") + " --config x");
  CHECK(human.status == 0);
  CHECK(human.out.find("valid: true") != std::string::npos);
}

TEST_CASE("divide the worked example") {
  const auto j = cli_json("divide " + scene("divisibility.json") + " --x x --y y");
  CHECK(j["divides"] == true);
  CHECK(j["alpha"] == json::array({1}));
  CHECK(j["quotients"][0]["maps"][0]["scales"] == json::array({"1/3"}));
  CHECK(j["quotients"][1]["arity"] == 0);
  CHECK(cli_json("divide " + scene("divisibility.json") + " --x x --y straddle")["divides"] == false);
  const auto along = cli_json("divide " + scene("divisibility.json") + " --x x --y y --alpha 1");
  CHECK(along["quotients"][0]["maps"][0]["scales"] == json::array({"1/3"}));
  CHECK(cli_json("divide " + scene("divisibility.json") + " --x x --y y --alpha 2")["divides"] == false);
}

TEST_CASE("partition, triangles, compose") {
  const auto p = cli_json("partition " + scene("five_disks.json") + " --x x --y y");
  CHECK(p["L1"] == json::array({1, 2}));
  CHECK(p["L2"] == json::array({2}));
  CHECK(p["R1"] == json::array({3}));
  CHECK(p["R2"] == json::array({1}));
  const auto c = cli_json("compose " + scene("divisibility.json") + " --x x --with y,straddle");
  CHECK(c["result"]["arity"] == 2);
  CHECK(c["result"]["maps"][0]["scales"] == json::array({"3/100"}));
  // The star example is not separated, so there is no triangle decomposition.
  CHECK(cli("triangles " + scene("star.json") + " --x x --y x").status == 1);
  const auto t = cli_json("triangles " + scene("star.json") + " --x sep --y sep");
  CHECK(t["equations_hold"] == true);
}

TEST_CASE("trees and the core") {
  const auto t = cli_json("tree-eval " + scene("tensor.json") + " --tree corolla");
  CHECK(t["well_formed"] == true);
  CHECK(t["value"]["arity"] == 2);
  const auto k = cli_json("core-normalize " + scene("tensor.json") + " --config w");
  CHECK(k["P"].size() == 1);
  CHECK(k["Q"].size() == 3);
  CHECK(cli("core-normalize " + scene("tensor.json") + " --config helly").status <= 1);
  const auto e = cli_json("entry-time " + scene("tensor.json") + " --tree corolla");
  CHECK(e["steps"].get<int>() >= 0);
}

TEST_CASE("flows and entry times") {
  const auto f = cli_json("flow " + scene("flows.json") + " --config left --kind shrink-left --t 1/2");
  CHECK(f["result"]["maps"][0]["scales"] == json::array({"1/4"}));
  const auto e = cli_json("entry-time " + scene("flows.json") + " --config left --kind shrink-left --inner half --outer unit");
  CHECK(e["t"] == "3/13");
  CHECK(e["binding"]["constraint"] == "contained");
  const auto r = cli_json("entry-time " + scene("flows.json") + " --config right --kind shrink-right --inner unit --outer double");
  CHECK(r["t"] == "1/6");
  CHECK(r["binding"]["constraint"] == "disjoint");
  const auto fl = cli_json("entry-time " + scene("flows.json") + " --config left --kind shrink-left --inner half --outer unit",
                           "DISKOP_NUMERIC_MODE=float");
  CHECK(fl["t"].get<double>() == doctest::Approx(3.0 / 13).epsilon(1e-12));
}

TEST_CASE("render") {
  const auto path = std::string(DISKOP_CLI_PATH) + ".test.svg";
  const auto r = cli("render " + scene("five_disks.json") + " --configs x,y -o " + path);
  REQUIRE(r.status == 0);
  std::ifstream in(path);
  std::stringstream svg;
  svg << in.rdbuf();
  int circles = 0;
  for (auto pos = svg.str().find("<circle"); pos != std::string::npos; pos = svg.str().find("<circle", pos + 1)) ++circles;
  CHECK(circles == 6);
  std::remove(path.c_str());
  CHECK(cli("render " + scene("five_disks.json") + " --configs x --axes 0,5").status == 1);
}

TEST_CASE("exit codes") {
  CHECK(cli("").status == 2);
  CHECK(cli("frobnicate").status == 2);
  CHECK(cli("validate " + scene("star.json") + " --config x --bogus").status == 2);
  CHECK(cli("validate " + scene("star.json") + " --config nothing").status == 2);
  CHECK(cli("validate --scene /nonexistent.json --config x").status == 2);
  CHECK(cli("validate " + scene("star.json") + " --config x --level sideways").status == 2);
  CHECK(cli("verify --trials 0").status == 2);
  CHECK(cli("verify --suite nothing").status == 2);
  CHECK(cli("validate " + scene("star.json") + " --config x", "DISKOP_NUMERIC_MODE=fuzzy").status == 2);
  // Irrational distances have no exact entry time.
  CHECK(cli("entry-time " + scene("five_disks.json") + " --config x --kind shrink-right --inner S --outer S").status == 1);
  CHECK(cli("--help").status == 0);
}

TEST_CASE("numeric mode selection") {
  const auto exact = cli_json("flow " + scene("flows.json") + " --config left --kind shrink-left --t 1/3");
  CHECK(exact["result"]["maps"][0]["scales"][0] == "1/3");
  const auto fl = cli_json("flow " + scene("flows.json") + " --config left --kind shrink-left --t 1/3", "DISKOP_NUMERIC_MODE=float");
  CHECK(fl["result"]["maps"][0]["scales"][0].get<double>() == doctest::Approx(1.0 / 3));
  CHECK(cli_json("--tolerance 0.01 validate " + scene("star.json") + " --config x", "DISKOP_NUMERIC_MODE=float")["valid"] == true);
}

TEST_CASE("verify is deterministic and reports every suite") {
  const auto a = cli("--json verify --trials 30 --seed 42");
  const auto b = cli("--json verify --trials 30 --seed 42 --threads 2");
  REQUIRE(a.status == 0);
  CHECK(a.out == b.out);
  const auto j = json::parse(a.out);
  CHECK(j["suites"].size() == 9);
  CHECK(j["failures"] == 0);
  for (const auto& s : j["suites"]) {
    CHECK(s["counterexample"].is_null());
    CHECK_FALSE(s.contains("elapsed_seconds"));
  }
  const auto timed = json::parse(cli("--json verify --suite flows --trials 5 --timing").out);
  CHECK(timed["suites"][0].contains("elapsed_seconds"));
  const auto one = json::parse(cli("--json verify --suite divisibility --trials 1 --trial 17").out);
  CHECK(one["suites"][0]["trials"] == 1);
}

}  // TEST_SUITE
