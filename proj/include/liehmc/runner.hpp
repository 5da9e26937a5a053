#ifndef LIEHMC_RUNNER_HPP
#define LIEHMC_RUNNER_HPP

#include <string>

#include "liehmc/config.hpp"

namespace liehmc {

/// Distinct exit codes for the CLI.
enum class RunStatus : int {
  Ok = 0,
  ConfigError = 2,
  KInvarianceError = 3,
  IoError = 4,
  BlowupCeiling = 5,
};

struct RunResult {
  RunStatus status = RunStatus::Ok;
  std::string message;
  std::string samples_path;
  std::string report_path;
  std::string manifest_path;
};

/// Executes the configured chains and writes samples, report and manifest
/// into output_dir. Output ordering is deterministic given the config.
RunResult run(const RunConfig& cfg, const std::string& output_dir, bool quiet = true);

}  // namespace liehmc

#endif
