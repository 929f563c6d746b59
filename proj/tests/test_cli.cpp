#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "offwhite/experiments.hpp"

using namespace offwhite;
using namespace offwhite::cli;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "offwhite_cli" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ExperimentConfig config(const std::string& name, json params, const fs::path& out) {
  ExperimentConfig c;
  c.name = name;
  c.params = std::move(params);
  c.output_dir = out;
  return c;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(OFFWHITE_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

json read_csv_column(const fs::path& p, const std::string& column) {
  std::ifstream in(p);
  std::string header;
  std::getline(in, header);
  std::vector<std::string> names;
  std::stringstream hs(header);
  for (std::string c; std::getline(hs, c, ',');) names.push_back(c);
  const auto idx = static_cast<std::size_t>(std::find(names.begin(), names.end(), column) - names.begin());
  json out = json::array();
  for (std::string line; std::getline(in, line);) {
    std::stringstream ls(line);
    std::string cell;
    for (std::size_t i = 0; i <= idx; ++i) std::getline(ls, cell, ',');
    out.push_back(cell);
  }
  return out;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("config round trips") {
  ExperimentConfig c;
  c.name = "kab";
  c.seed = 99;
  c.output_dir = "somewhere";
  c.threads = 3;
  c.params = {{"depth", 10}};
  const auto d = ExperimentConfig::from_json(c.to_json());
  CHECK(d.to_json() == c.to_json());
}

TEST_CASE("config errors carry line numbers") {
  const auto dir = scratch("badconfig");
  std::ofstream(dir / "unknown.json") << "{\n  \"name\": \"kab\",\n  \"colour\": 3\n}\n";
  CHECK_THROWS_WITH_AS(ExperimentConfig::load(dir / "unknown.json"), doctest::Contains("line 3"), ConfigError);
  std::ofstream(dir / "broken.json") << "{\n  \"name\": \"kab\",\n  \"seed\": ,\n}\n";
  CHECK_THROWS_WITH_AS(ExperimentConfig::load(dir / "broken.json"), doctest::Contains(":3:"), ConfigError);
  std::ofstream(dir / "param.json") << "{\n  \"name\": \"kab\",\n  \"params\": {\n    \"depht\": 4\n  }\n}\n";
  auto c = ExperimentConfig::load(dir / "param.json");
  c.output_dir = dir / "out";
  CHECK_THROWS_WITH_AS(run_experiment(c), doctest::Contains("line 4"), ConfigError);
  std::ofstream(dir / "type.json") << "{\n  \"name\": \"kab\",\n  \"params\": {\n    \"depth\": \"deep\"\n  }\n}\n";
  c = ExperimentConfig::load(dir / "type.json");
  c.output_dir = dir / "out";
  CHECK_THROWS_WITH_AS(run_experiment(c), doctest::Contains("line 4"), ConfigError);
}

TEST_CASE("exit codes") {
  const auto dir = scratch("exit");
  std::ofstream(dir / "unknown.json") << "{\"name\": \"gauss\", \"params\": {\"bogus\": 1}}\n";
  CHECK(run_cli("gauss --config " + (dir / "unknown.json").string() + " --out " + (dir / "a").string()) == 2);
  CHECK(run_cli("separate --out " + (dir / "b").string() + " --config " + (dir / "same.json").string()) == 2);
  std::ofstream(dir / "same.json") << "{\"params\": {\"a1\": 1, \"a2\": 1}}\n";
  CHECK(run_cli("separate --config " + (dir / "same.json").string() + " --out " + (dir / "c").string()) == 2);
  std::ofstream(dir / "mismatch.json") << "{\"name\": \"kab\"}\n";
  CHECK(run_cli("gauss --config " + (dir / "mismatch.json").string() + " --out " + (dir / "d").string()) == 2);
  CHECK(run_cli("nonsense") == 2);
  CHECK(run_cli("gauss --out " + (dir / "e").string()) == 0);
  CHECK(fs::exists(dir / "e" / "summary.json"));
}

TEST_CASE("equal exponents are rejected") {
  const auto dir = scratch("equal");
  CHECK_THROWS_AS(run_separation(config("separate", {{"a1", 1.0}, {"a2", 1.0}}, dir)), ConfigError);
}

TEST_CASE("separation tables") {
  const auto dir = scratch("separate");
  const auto s = run_separation(config("separate", {{"a1", 3.0}, {"a2", 1.0}, {"grid", 2048}, {"ns", {2, 4, 8}}}, dir));
  CHECK(s.at("schema_version") == kSchemaVersion);
  CHECK(s.at("library_version") == OFFWHITE_VERSION);
  CHECK(s.at("config").at("params").at("a1") == 3.0);
  CHECK(s.at("config").at("params").contains("count"));
  const auto diag = read_csv_column(dir / "witness.csv", "diag_alpha");
  CHECK(std::stod(diag.back().get<std::string>()) == doctest::Approx(1.0 / 30.0).epsilon(1e-6));
  for (const char* f : {"witness.csv", "verdicts.csv", "decay.csv", "summary.json"}) CHECK(fs::exists(dir / f));
}

TEST_CASE("flipdecay with the white density is flagged flat") {
  const auto dir = scratch("flipwhite");
  const auto s = run_flipdecay(config("flipdecay", {{"density", {{"kind", "white"}}}, {"grid", 4096}}, dir));
  CHECK(s.at("results").at("flag") == "no decay");
  const auto dir2 = scratch("fliplog");
  const auto t = run_flipdecay(config("flipdecay", {{"grid", 4096}}, dir2));
  CHECK(t.at("results").at("flag") != "no decay");
  CHECK(fs::exists(dir2 / "flipdecay_plot.csv"));
}

TEST_CASE("kab reflection decodes as decreasing with swapped bits") {
  const auto dir = scratch("kab");
  const auto s = run_kab(config("kab", {{"runs", 4}, {"distortions", {"reflection"}}}, dir));
  CHECK(s.at("results").at("all_recovered") == true);
  for (const auto& o : read_csv_column(dir / "kab.csv", "orientation")) CHECK(o == "decreasing");
  CHECK_THROWS_AS(run_kab(config("kab", {{"distortions", {"shear"}}}, dir)), ConfigError);
}

TEST_CASE("reruns produce identical csv bodies") {
  const std::vector<std::pair<std::string, json>> cases{
      {"separate", {{"grid", 2048}, {"ns", {2, 4, 8}}}},
      {"flipdecay", {{"grid", 2048}, {"ns", {2, 4, 8}}}},
      {"randomset", {{"diffusion", {{"horizon", 5.0}, {"dt", 1e-3}}}}},
      {"kab", {{"runs", 2}}},
      {"gauss", {{"angles", 10}}},
      {"spectral-check", json::object()}};
  for (const auto& [name, params] : cases) {
    CAPTURE(name);
    const auto a = scratch(name + "_a");
    const auto b = scratch(name + "_b");
    auto ca = config(name, params, a);
    auto cb = config(name, params, b);
    ca.seed = cb.seed = 7;
    const auto sa = run_experiment(ca);
    run_experiment(cb);
    for (const auto& f : sa.at("files")) {
      const auto file = f.get<std::string>();
      CAPTURE(file);
      CHECK(slurp(a / file) == slurp(b / file));
    }
  }
}

}
