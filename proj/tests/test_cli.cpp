#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "agrisim/json_types.hpp"
#include "cli.hpp"
#include "doctest.h"

namespace fs = std::filesystem;
using agrisim::Json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = agrisim::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void spit(const fs::path& p, const std::string& body) { std::ofstream(p, std::ios::binary) << body; }

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("agrisim_cli_" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

const char* kSmallScenario = R"({
  "seed": 3,
  "field_vertices": [{"east_m": 0, "north_m": 0}, {"east_m": 40, "north_m": 0},
                     {"east_m": 40, "north_m": 30}, {"east_m": 0, "north_m": 30}],
  "plants": {"density_per_ha": 150},
  "detector": {"detection_prob": 0.9, "position_noise_sigma_m": 0.02, "false_positives_per_image": 0.02}
})";

}  // namespace

TEST_CASE("simulate twice with the same seed gives identical files") {
  TempDir tmp;
  spit(tmp / "s.json", kSmallScenario);
  REQUIRE(cli({"simulate", "--scenario", tmp / "s.json", "--seed", "7", "-o", tmp / "a"}).code == 0);
  REQUIRE(cli({"simulate", "--scenario", tmp / "s.json", "--seed", "7", "-o", tmp / "b"}).code == 0);
  for (const char* f : {"report.json", "summary.csv", "events.jsonl"}) {
    CHECK(slurp(tmp.path / "a" / f) == slurp(tmp.path / "b" / f));
  }
  const Json rep = Json::parse(slurp(tmp.path / "a" / "report.json"));
  CHECK(rep["seed"] == 7);
  CHECK(rep["effective_config"]["seed"] == 7);
  CHECK(rep["plants"]["reconciles"] == true);
  CHECK(slurp(tmp.path / "a" / "summary.csv").rfind("# {", 0) == 0);
  CHECK(slurp(tmp.path / "a" / "events.jsonl").find("\"effective_config\"") != std::string::npos);

  REQUIRE(cli({"simulate", "--scenario", tmp / "s.json", "--seed", "8", "-o", tmp / "c"}).code == 0);
  CHECK(slurp(tmp.path / "a" / "events.jsonl") != slurp(tmp.path / "c" / "events.jsonl"));
  const auto r = cli({"report", "-i", tmp / "a/report.json"});
  CHECK(r.code == 0);
  CHECK(r.out.find("sprayed") != std::string::npos);
}

TEST_CASE("netcheck verdicts") {
  TempDir tmp;
  spit(tmp / "s.json", kSmallScenario);
  const auto g4 = cli({"netcheck", "--preset", "public-4g", "--scenario", tmp / "s.json"});
  CHECK(g4.code == 0);
  CHECK(g4.out.find("uplink infeasible") != std::string::npos);
  const auto fut = cli({"netcheck", "--preset", "future-5g-sa", "--scenario", tmp / "s.json", "--trace", tmp / "t.csv",
                        "-o", tmp / "n.json"});
  CHECK(fut.code == 0);
  CHECK(fut.out.find("uplink feasible") != std::string::npos);
  const std::string trace = slurp(tmp.path / "t.csv");
  CHECK(trace.find("t,offered,served,backlog,delay") != std::string::npos);
  CHECK(Json::parse(slurp(tmp.path / "n.json"))["effective_config"]["seed"] == 3);
}

TEST_CASE("stage commands chain through files") {
  TempDir tmp;
  spit(tmp / "s.json", kSmallScenario);
  REQUIRE(cli({"plan-survey", "-s", tmp / "s.json", "-o", tmp / "plan.jsonl"}).code == 0);
  std::istringstream lines(slurp(tmp.path / "plan.jsonl"));
  std::string first;
  std::getline(lines, first);
  CHECK(Json::parse(first)["type"] == "header");

  REQUIRE(cli({"gen-field", "-s", tmp / "s.json", "-o", tmp / "truth.json"}).code == 0);
  REQUIRE(cli({"detect", "-s", tmp / "s.json", "--truth", tmp / "truth.json", "-o", tmp / "targets.json", "--csv",
               tmp / "targets.csv"})
              .code == 0);
  const auto route = cli({"optimize-route", "-s", tmp / "s.json", "--targets", tmp / "targets.csv", "--heuristic", "both"});
  REQUIRE(route.code == 0);
  const Json rj = Json::parse(route.out);
  CHECK(rj["nn_length_m"].get<double>() >= rj["improved_length_m"].get<double>());
  CHECK(rj["seed"] == 3);

  const auto closed = cli({"optimize-route", "--targets", tmp / "targets.json", "--heuristic", "nn", "--return-to-start"});
  REQUIRE(closed.code == 0);
  CHECK(Json::parse(closed.out)["tour"]["closed"] == true);

  REQUIRE(cli({"spray-plan", "-s", tmp / "s.json", "-t", tmp / "targets.json", "-o", tmp / "spray.json", "--csv",
               tmp / "valves.csv"})
              .code == 0);
  const std::string valves = slurp(tmp.path / "valves.csv");
  CHECK(valves.find("nozzle_id,t_open,t_close,plant_id") != std::string::npos);
  const Json spray = Json::parse(slurp(tmp.path / "spray.json"));
  CHECK(spray["report"]["tank_initial_L"].get<double>() == 24.0);
}

TEST_CASE("sweep writes one row per value") {
  TempDir tmp;
  spit(tmp / "s.json", kSmallScenario);
  const auto r = cli({"sweep", "-s", tmp / "s.json", "-p", "plants.density_per_ha", "-v", "0,100,200", "--jobs", "2",
                      "-o", tmp / "sw"});
  REQUIRE(r.code == 0);
  const Json doc = Json::parse(slurp(tmp.path / "sw" / "sweep.json"));
  CHECK(doc["runs"].size() == 3);
  CHECK(doc["runs"][0]["report"]["plants"]["total"] == 0);
  std::istringstream csv(slurp(tmp.path / "sw" / "sweep.csv"));
  std::string line;
  int rows = 0;
  while (std::getline(csv, line)) rows += (!line.empty() && line[0] != '#') ? 1 : 0;
  CHECK(rows == 4);
}

TEST_CASE("exit codes") {
  TempDir tmp;
  spit(tmp / "bad.json", R"({"survey": {"overlap": 1.5}})");
  spit(tmp / "unknown.json", R"({"survey": {"altitude_ft": 30}})");
  spit(tmp / "broken.json", "{ nope");
  CHECK(cli({"simulate", "-s", tmp / "bad.json"}).code == 1);
  CHECK(cli({"simulate", "-s", tmp / "unknown.json"}).code == 1);
  CHECK(cli({"simulate", "-s", tmp / "broken.json"}).code == 1);
  CHECK(cli({"simulate", "-s", tmp / "missing.json"}).code == 1);
  CHECK(cli({"sweep", "-p", "no.such", "-v", "1"}).code == 1);
  CHECK(cli({"netcheck", "--preset", "dialup"}).code == 1);
  CHECK(cli({"optimize-route"}).code == 1);
  CHECK(cli({}).code == 1);
  CHECK(cli({"--help"}).code == 0);
  // A file where a directory is expected is an I/O failure, not bad input.
  spit(tmp / "file", "x");
  CHECK(cli({"simulate", "--set", "plants.density_per_ha=0", "-o", tmp / "file/sub"}).code == 2);
}
