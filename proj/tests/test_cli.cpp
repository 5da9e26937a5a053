#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

const char* cli_path() { return LIEHMC_CLI_PATH; }

int run_cli(const std::string& args) {
  std::string cmd = std::string(cli_path()) + " " + args + " >/dev/null 2>&1";
  int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

fs::path fresh_dir(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / ("liehmc_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int count_lines(const std::string& text) {
  int n = 0;
  for (char c : text)
    if (c == '\n') ++n;
  return n;
}

const char* kHaarConfig = R"({
  "space": {"type": "group", "family": "SO", "n": 3},
  "potential": {"name": "constant"},
  "integrator": {"scheme": "leapfrog", "step_size": 0.3, "n_steps": 8},
  "n_samples": 50, "burn_in": 10, "seed": 7
})";

}  // namespace

TEST_CASE("haar run produces samples, report, and manifest") {
  auto dir = fresh_dir("haar");
  write_file(dir / "config.json", kHaarConfig);
  int rc = run_cli("--config " + (dir / "config.json").string() + " --output-dir " +
                   dir.string() + " --quiet");
  CHECK(rc == 0);

  std::string samples = slurp(dir / "samples.csv");
  CHECK(samples.rfind("# liehmc samples schema_version=1", 0) == 0);
  CHECK(count_lines(samples) == 50 + 2);  // comment + header + rows
  CHECK(samples.find("index,chain,x0") != std::string::npos);

  auto report = nlohmann::json::parse(slurp(dir / "report.json"));
  CHECK(report.at("acceptance_rate").get<double>() == 1.0);
  CHECK(report.at("membership_defect_max").get<double>() < 1e-9);

  auto manifest = nlohmann::json::parse(slurp(dir / "manifest.json"));
  CHECK(manifest.contains("liehmc_version"));
  CHECK(manifest.at("config").at("seed").get<int>() == 7);
}

TEST_CASE("same config and seed give byte-identical samples") {
  auto a = fresh_dir("det_a");
  auto b = fresh_dir("det_b");
  write_file(a / "config.json", kHaarConfig);
  CHECK(run_cli("--config " + (a / "config.json").string() + " --output-dir " + a.string() +
                " --quiet") == 0);
  CHECK(run_cli("--config " + (a / "config.json").string() + " --output-dir " + b.string() +
                " --quiet") == 0);
  CHECK(slurp(a / "samples.csv") == slurp(b / "samples.csv"));

  auto c = fresh_dir("det_c");
  CHECK(run_cli("--config " + (a / "config.json").string() + " --output-dir " + c.string() +
                " --seed-override 8 --quiet") == 0);
  CHECK(slurp(a / "samples.csv") != slurp(c / "samples.csv"));
}

TEST_CASE("manifest round-trips as a config") {
  auto a = fresh_dir("mani_a");
  auto b = fresh_dir("mani_b");
  write_file(a / "config.json", kHaarConfig);
  CHECK(run_cli("--config " + (a / "config.json").string() + " --output-dir " + a.string() +
                " --quiet") == 0);
  CHECK(run_cli("--config " + (a / "manifest.json").string() + " --output-dir " +
                b.string() + " --quiet") == 0);
  CHECK(slurp(a / "samples.csv") == slurp(b / "samples.csv"));
}

TEST_CASE("jsonl output") {
  auto dir = fresh_dir("jsonl");
  write_file(dir / "config.json", R"({
    "space": {"type": "sphere", "n": 3},
    "potential": {"name": "vmf", "mu": [0.0, 0.6, 0.8], "kappa": 2.0},
    "integrator": {"scheme": "leapfrog", "step_size": 0.25, "n_steps": 10},
    "n_samples": 40, "burn_in": 10, "seed": 3,
    "output": {"format": "jsonl"}
  })");
  CHECK(run_cli("--config " + (dir / "config.json").string() + " --output-dir " +
                dir.string() + " --quiet") == 0);
  std::string samples = slurp(dir / "samples.jsonl");
  CHECK(count_lines(samples) == 40);
  std::istringstream in(samples);
  std::string line;
  while (std::getline(in, line)) {
    auto j = nlohmann::json::parse(line);
    CHECK(j.at("value").size() == 3);
    CHECK(j.contains("accept"));
  }
  auto report = nlohmann::json::parse(slurp(dir / "report.json"));
  CHECK(report.at("noether_leakage_max").get<double>() < 1e-9);
}

TEST_CASE("distinct exit codes for distinct failures") {
  auto dir = fresh_dir("errs");

  SUBCASE("missing config file") {
    CHECK(run_cli("--config " + (dir / "nope.json").string() + " --output-dir " +
                  dir.string() + " --quiet") == 2);
  }

  SUBCASE("unknown key is rejected") {
    write_file(dir / "bad.json", R"({"space": {"type": "group", "n": 3}, "stepsize": 0.1})");
    CHECK(run_cli("--config " + (dir / "bad.json").string() + " --output-dir " +
                  dir.string() + " --quiet") == 2);
  }

  SUBCASE("invalid value is rejected") {
    write_file(dir / "bad2.json",
               R"({"space": {"type": "group", "family": "SU", "n": 3}})");
    CHECK(run_cli("--config " + (dir / "bad2.json").string() + " --output-dir " +
                  dir.string() + " --quiet") == 2);
  }

  SUBCASE("non-K-invariant potential on a quotient trips the gate") {
    write_file(dir / "gate.json", R"({
      "space": {"type": "sphere", "n": 3},
      "potential": {"name": "gauge", "beta": 1.0,
                    "U": [[0.4,-0.9,0.3],[1.1,0.2,-0.5],[0.0,0.8,-0.7]]},
      "n_samples": 10, "burn_in": 0, "seed": 1
    })");
    CHECK(run_cli("--config " + (dir / "gate.json").string() + " --output-dir " +
                  dir.string() + " --quiet") == 3);
  }
}

TEST_CASE("chains override multiplies the sample count") {
  auto dir = fresh_dir("chains");
  write_file(dir / "config.json", kHaarConfig);
  CHECK(run_cli("--config " + (dir / "config.json").string() + " --output-dir " +
                dir.string() + " --chains 2 --quiet") == 0);
  std::string samples = slurp(dir / "samples.csv");
  CHECK(count_lines(samples) == 2 * 50 + 2);
  CHECK(samples.find("\n0,1,") != std::string::npos);  // second chain id appears
}
