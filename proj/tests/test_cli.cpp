#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

#include "fairdiv/rational.hpp"
#include "json.hpp"

// End-to-end tests driving the installed command-line binary as a subprocess.
// The binary path is compiled in by the build; FAIRDIV_CLI overrides it.

#ifndef FAIRDIV_CLI_PATH
#define FAIRDIV_CLI_PATH "../fairdiv"
#endif

namespace {

using nlohmann::json;

std::string cli_path() {
  if (const char* env = std::getenv("FAIRDIV_CLI")) return env;
  return FAIRDIV_CLI_PATH;
}

struct RunResult {
  int exit_code = -1;
  std::string out;
};

// Runs `<prefix> <cli> <args>` through the shell, capturing stdout only.
RunResult run_cli(const std::string& args, const std::string& env_prefix = "") {
  const std::string command =
      env_prefix + (env_prefix.empty() ? "" : " ") + "\"" + cli_path() + "\" " + args +
      " 2>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult result;
  char buffer[4096];
  std::size_t got = 0;
  while ((got = fread(buffer, 1, sizeof(buffer), pipe)) > 0) result.out.append(buffer, got);
  const int status = pclose(pipe);
  REQUIRE(WIFEXITED(status));
  result.exit_code = WEXITSTATUS(status);
  return result;
}

// Materializes instance text under a unique name in the system temp dir.
std::string write_instance(const std::string& name, const std::string& text) {
  const std::filesystem::path path = std::filesystem::temp_directory_path() /
                                     ("fairdiv-cli-test-" + name + "-" +
                                      std::to_string(static_cast<long>(getpid())) + ".json");
  std::ofstream file(path);
  file << text;
  file.close();
  return path.string();
}

const char* kPathThree = R"({"x_count": 2, "y_count": 1, "edges": [[0, 0], [1, 0]]})";
const char* kSingleEdge = R"({"x_count": 1, "y_count": 1, "edges": [[0, 0]]})";
const char* kSquare =
    R"({"x_count": 2, "y_count": 2, "edges": [[0, 0], [0, 1], [1, 0], [1, 1]],
        "weights": [[0, 0, "1"], [0, 1, "2"], [1, 0, "2"], [1, 1, "1"]]})";

}  // namespace

TEST_CASE("cli: help exits cleanly") {
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("efm --help").exit_code == 0);
}

TEST_CASE("cli: efm max prints compact canonical JSON") {
  const std::string path = write_instance("path3", kPathThree);
  const RunResult r = run_cli("efm max -i " + path);
  CHECK(r.exit_code == 0);
  CHECK(r.out == "{\"matching\":[],\"size\":0}\n");

  const std::string square = write_instance("square", kSquare);
  const RunResult full = run_cli("efm max -i " + square);
  CHECK(full.exit_code == 0);
  CHECK(full.out == "{\"matching\":[[0,0],[1,1]],\"size\":2}\n");
}

TEST_CASE("cli: efm exists reports the certificate") {
  const std::string k11 = write_instance("k11", kSingleEdge);
  const RunResult yes = run_cli("efm exists -i " + k11);
  CHECK(yes.exit_code == 0);
  CHECK(yes.out == "{\"nonempty\":true,\"reason\":\"corollary-c\"}\n");

  const std::string path = write_instance("path3b", kPathThree);
  const RunResult no = run_cli("efm exists -i " + path);
  CHECK(no.exit_code == 0);
  CHECK(no.out == "{\"nonempty\":false,\"reason\":\"y-path-saturated\"}\n");
}

TEST_CASE("cli: weighted solvers report the achieved weight") {
  const std::string square = write_instance("square-w", kSquare);
  const RunResult lo = run_cli("efm min-weight --verify -i " + square);
  CHECK(lo.exit_code == 0);
  CHECK(lo.out == "{\"matching\":[[0,0],[1,1]],\"size\":2,\"weight\":\"2\"}\n");
  const RunResult hi = run_cli("efm max-weight --verify -i " + square);
  CHECK(hi.exit_code == 0);
  CHECK(hi.out == "{\"matching\":[[0,1],[1,0]],\"size\":2,\"weight\":\"4\"}\n");
}

TEST_CASE("cli: decompose emits the full partition and is byte-stable") {
  const std::string file = write_instance(
      "funnel", R"({"x_count": 3, "y_count": 2, "edges": [[0,0],[1,0],[2,0],[2,1]]})");
  const RunResult first = run_cli("efm decompose -i " + file);
  CHECK(first.exit_code == 0);
  const json j = json::parse(first.out);
  CHECK(j["x_s"] == json::array({0, 1}));
  CHECK(j["x_l"] == json::array({2}));
  CHECK(j["y_s"] == json::array({0}));
  CHECK(j["y_l"] == json::array({1}));
  const RunResult second = run_cli("efm decompose -i " + file);
  CHECK(second.out == first.out);
}

TEST_CASE("cli: reads the instance from stdin by default") {
  const RunResult r =
      run_cli("efm max", "printf '%s' '" + std::string(kSingleEdge) + "' |");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "{\"matching\":[[0,0]],\"size\":1}\n");
}

TEST_CASE("cli: star solver needs --r and collapses to stars") {
  const std::string k12 = write_instance(
      "k12", R"({"x_count": 1, "y_count": 2, "edges": [[0, 0], [0, 1]]})");
  const RunResult r = run_cli("efm star --r 2 --verify -i " + k12);
  CHECK(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(j["count"] == 1);
  CHECK(j["r"] == 2);
  CHECK(j["stars"][0]["center"] == 0);
  CHECK(j["stars"][0]["leaves"] == json::array({0, 1}));
  CHECK(run_cli("efm star -i " + k12).exit_code == 1);  // missing required --r
}

TEST_CASE("cli: usage and input problems exit with code 1") {
  CHECK(run_cli("no-such-command").exit_code == 1);
  CHECK(run_cli("efm").exit_code == 1);  // subcommand required
  CHECK(run_cli("efm max -i /nonexistent/path.json").exit_code == 1);
  const std::string broken = write_instance("broken", "{\"x_count\": ");
  CHECK(run_cli("efm max -i " + broken).exit_code == 1);
  const std::string bad_shape = write_instance("bad-shape", R"({"x_count": 1})");
  CHECK(run_cli("efm max -i " + bad_shape).exit_code == 1);
}

TEST_CASE("cli: cake protocols allocate proportionally and verify") {
  const std::string cake = write_instance("cake3", R"({
    "agents": [
      {"breakpoints": ["0", "3/10", "7/10", "1"], "densities": ["10/3", "5/2", "10/3"]},
      {"breakpoints": ["0", "2/5", "3/5", "1"], "densities": ["5/2", "5", "5/2"]},
      {"breakpoints": ["0", "1/5", "3/5", "1"], "densities": ["5", "5/2", "5/2"]}
    ]
  })");
  const RunResult lone = run_cli("cake lone-divider --verify -i " + cake);
  CHECK(lone.exit_code == 0);
  const RunResult sym = run_cli("cake symmetric --verify -i " + cake);
  CHECK(sym.exit_code == 0);
  const json j = json::parse(sym.out);
  REQUIRE(j["pieces"].size() == 3);
  CHECK(j["pieces"][2] == json::parse(R"([["0","1/5"]])"));
  CHECK(j["pieces"][1] == json::parse(R"([["1/5","11/20"]])"));
  CHECK(j["pieces"][0] == json::parse(R"([["11/20","1"]])"));
  CHECK(j["values"][2] == "1");
  CHECK(j["values"][1] == "5/4");
  CHECK(j["values"][0] == "11/8");
}

TEST_CASE("cli: mms allocate meets every agent's threshold") {
  const std::string mms = write_instance("units7", R"({
    "values": [["1","1","1","1","1","1","1"],
               ["1","1","1","1","1","1","1"],
               ["1","1","1","1","1","1","1"]],
    "variant": "2n-2"
  })");
  const RunResult r = run_cli("mms allocate --verify -i " + mms);
  CHECK(r.exit_code == 0);
  const json j = json::parse(r.out);
  REQUIRE(j["bundles"].size() == 3);
  std::vector<bool> seen(7, false);
  for (int i = 0; i < 3; ++i) {
    CHECK(j["thresholds"][i] == "1");
    const auto value = fairdiv::Rational::parse(j["values"][i].get<std::string>());
    CHECK(value >= fairdiv::Rational::parse(j["thresholds"][i].get<std::string>()));
    for (const auto& object : j["bundles"][i]) {
      const int index = object.get<int>();
      REQUIRE(!seen.at(index));
      seen[index] = true;
    }
  }
  for (int index = 0; index < 7; ++index) CHECK(seen[index]);
  // The flag form must not fight the instance's own variant list.
  const std::string per_agent = write_instance("per-agent", R"({
    "values": [["2","3"], ["4","1"]],
    "per_agent_variants": ["2n-2", "two-thirds"]
  })");
  CHECK(run_cli("mms allocate -i " + per_agent).exit_code == 0);
  CHECK(run_cli("mms allocate --variant 2n-2 -i " + per_agent).exit_code == 1);
  const std::string no_variant = write_instance("no-variant", R"({"values": [["1"], ["1"]]})");
  CHECK(run_cli("mms allocate -i " + no_variant).exit_code == 1);
  CHECK(run_cli("mms allocate --variant 2n-2 -i " + no_variant).exit_code == 0);
}

TEST_CASE("cli: oracle subcommands enumerate, evaluate and verify") {
  const std::string k22 = write_instance(
      "k22", R"({"x_count": 2, "y_count": 2, "edges": [[0,0],[0,1],[1,0],[1,1]]})");
  const RunResult enumerated = run_cli("oracle enumerate -i " + k22);
  CHECK(enumerated.exit_code == 0);
  CHECK(json::parse(enumerated.out)["count"] == 3);

  const std::string mms = write_instance("mms-oracle", R"({"values": [["3","2","2","1"]]})");
  const RunResult value = run_cli("oracle mms --l 1 --d 2 -i " + mms);
  CHECK(value.exit_code == 0);
  CHECK(json::parse(value.out)["value"] == "4");

  // A failing verification report exits with code 2; a passing one with 0.
  const std::string good_efm = write_instance("verify-efm", R"({
    "x_count": 2, "y_count": 1, "edges": [[0,0],[1,0]], "matching": [[0,0]]
  })");
  const RunResult envy = run_cli("oracle verify efm -i " + good_efm);
  CHECK(envy.exit_code == 0);  // report-only, never fails the run
  const json report = json::parse(envy.out);
  CHECK(report["envy_free"] == false);
  CHECK(report["min_alpha"] == "1");
  CHECK(report["min_c"] == 1);

  const std::string bad_cake = write_instance("verify-cake", R"({
    "agents": [{"breakpoints": ["0","1"], "densities": ["1"]},
               {"breakpoints": ["0","1"], "densities": ["1"]}],
    "pieces": [[["0","1/4"]], [["1/4","1"]]]
  })");
  CHECK(run_cli("oracle verify cake -i " + bad_cake).exit_code == 2);
  const std::string good_cake = write_instance("verify-cake-good", R"({
    "agents": [{"breakpoints": ["0","1"], "densities": ["1"]},
               {"breakpoints": ["0","1"], "densities": ["1"]}],
    "pieces": [[["0","1/2"]], [["1/2","1"]]]
  })");
  CHECK(run_cli("oracle verify cake -i " + good_cake).exit_code == 0);

  const std::string bad_mms = write_instance("verify-mms", R"({
    "values": [["5","5"], ["5","5"]],
    "variant": "2n-2",
    "bundles": [[], [0, 1]]
  })");
  CHECK(run_cli("oracle verify mms -i " + bad_mms).exit_code == 2);
}

TEST_CASE("cli: oracle bounds are adjustable through the environment") {
  const std::string k22 = write_instance(
      "k22-bound", R"({"x_count": 2, "y_count": 2, "edges": [[0,0],[0,1],[1,0],[1,1]]})");
  CHECK(run_cli("oracle enumerate -i " + k22).exit_code == 0);
  CHECK(run_cli("oracle enumerate -i " + k22, "FAIRDIV_ORACLE_MAX_VERTICES=2").exit_code == 1);
  const std::string units = write_instance("units3", R"({"values": [["1","1","1"]]})");
  CHECK(run_cli("oracle mms --l 1 --d 2 -i " + units,
                "FAIRDIV_ORACLE_MAX_OBJECTS=2").exit_code == 1);
}

TEST_CASE("cli: generators are deterministic and feed the solvers") {
  const RunResult a = run_cli("gen graph --seed 7 --x 5 --y 5 --edge-prob 50");
  const RunResult b = run_cli("gen graph --seed 7 --x 5 --y 5 --edge-prob 50");
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  const RunResult c = run_cli("gen graph --seed 8 --x 5 --y 5 --edge-prob 50");
  CHECK(c.out != a.out);

  const json jg = json::parse(a.out);
  CHECK(jg["x_count"] == 5);
  CHECK(jg["y_count"] == 5);

  // Pipe generator output straight into a verified solver run.
  const RunResult piped = run_cli(
      "gen graph --seed 11 --x 4 --y 4 --weighted | \"" + cli_path() + "\" efm min-weight --verify");
  CHECK(piped.exit_code == 0);

  const RunResult cake = run_cli(
      "gen cake --seed 3 --agents 3 | \"" + cli_path() + "\" cake symmetric --verify");
  CHECK(cake.exit_code == 0);

  const RunResult mms = run_cli(
      "gen mms --seed 5 --agents 3 --objects 7 | \"" + cli_path() +
      "\" mms allocate --variant 2n-2 --verify");
  CHECK(mms.exit_code == 0);
}
