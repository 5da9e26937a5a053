#ifndef LIEHMC_CONFIG_HPP
#define LIEHMC_CONFIG_HPP

#include <optional>
#include <string>

#include <json.hpp>

#include "liehmc/homogeneous.hpp"

namespace liehmc {

inline constexpr const char* kLibraryVersion = "0.1.0";
inline constexpr int kOutputSchemaVersion = 1;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Fully resolved run description. Parsed from a strict JSON schema:
/// unknown keys are rejected and all numeric ranges checked at load.
struct RunConfig {
  enum class SpaceType { Group, Sphere, Stiefel };
  SpaceType space = SpaceType::Group;
  GroupFamily family = GroupFamily::SOn;
  int n = 3;
  int stiefel_k = 1;

  MetricFlavor metric = MetricFlavor::TraceForm;

  std::string potential_name = "constant";  // constant | gauge | vmf
  double beta = 1.0;
  Eigen::MatrixXd gauge_u;    // gauge only
  Eigen::VectorXd vmf_mu;     // vmf only
  double vmf_kappa = 0.0;

  IntegratorScheme scheme;
  int chains = 1;
  int n_samples = 1000;
  int burn_in = 100;
  int thinning = 1;
  std::uint64_t seed = 0;

  std::string output_format = "csv";  // csv | jsonl
  bool compute_ess = true;
  bool energy_scan = false;
  double max_blowup_fraction = 0.5;
};

/// Parses and validates; accepts either a bare config object or a manifest
/// (an object wrapping the resolved config under "config").
RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::string& path);

/// Resolved config serialized back to the schema (manifest payload).
nlohmann::json config_to_json(const RunConfig& cfg);

}  // namespace liehmc

#endif
