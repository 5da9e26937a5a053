#include <iostream>

#include <CLI11.hpp>

#include "liehmc/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"HMC sampler on matrix Lie groups and homogeneous spaces"};

  std::string config_path;
  std::string output_dir = ".";
  std::uint64_t seed_override = 0;
  bool has_seed = false;
  int chains_override = 0;
  bool quiet = false;

  app.add_option("--config", config_path, "JSON run configuration")->required();
  app.add_option("--output-dir", output_dir, "Directory for samples/report/manifest");
  auto* seed_opt = app.add_option("--seed-override", seed_override, "Override config seed");
  app.add_option("--chains", chains_override, "Override number of chains");
  app.add_flag("--quiet", quiet, "Suppress progress output");

  CLI11_PARSE(app, argc, argv);
  has_seed = seed_opt->count() > 0;

  liehmc::RunConfig cfg;
  try {
    cfg = liehmc::load_config(config_path);
  } catch (const liehmc::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return static_cast<int>(liehmc::RunStatus::ConfigError);
  }
  if (has_seed) cfg.seed = seed_override;
  if (chains_override > 0) cfg.chains = chains_override;

  liehmc::RunResult res = liehmc::run(cfg, output_dir, quiet);
  if (res.status != liehmc::RunStatus::Ok)
    std::cerr << "liehmc: " << res.message << "\n";
  return static_cast<int>(res.status);
}
