#include "liehmc/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

namespace liehmc {

namespace {

using nlohmann::json;

void check_keys(const json& obj, const std::string& where,
                const std::set<std::string>& allowed) {
  if (!obj.is_object()) throw ConfigError(where + ": expected an object");
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.count(it.key()))
      throw ConfigError(where + ": unknown key '" + it.key() + "'");
}

template <typename T>
T require(const json& obj, const std::string& where, const std::string& key) {
  if (!obj.contains(key)) throw ConfigError(where + ": missing key '" + key + "'");
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(where + ": bad type for '" + key + "'");
  }
}

template <typename T>
T optional_of(const json& obj, const std::string& where, const std::string& key, T dflt) {
  if (!obj.contains(key)) return dflt;
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(where + ": bad type for '" + key + "'");
  }
}

Eigen::MatrixXd parse_matrix(const json& arr, const std::string& where) {
  if (!arr.is_array() || arr.empty()) throw ConfigError(where + ": expected a nested array");
  const int rows = static_cast<int>(arr.size());
  const int cols = static_cast<int>(arr[0].size());
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (!arr[i].is_array() || static_cast<int>(arr[i].size()) != cols)
      throw ConfigError(where + ": ragged matrix");
    for (int j = 0; j < cols; ++j) m(i, j) = arr[i][j].get<double>();
  }
  return m;
}

}  // namespace

RunConfig parse_config(const nlohmann::json& doc) {
  json root = doc;
  if (root.is_object() && root.contains("config")) {
    check_keys(root, "manifest", {"liehmc_version", "schema_version", "config"});
    root = root.at("config");
  }
  check_keys(root, "config",
             {"space", "metric", "potential", "integrator", "chains", "n_samples",
              "burn_in", "thinning", "seed", "output", "diagnostics",
              "max_blowup_fraction"});

  RunConfig cfg;

  const json& space = root.contains("space") ? root.at("space") : json::object();
  check_keys(space, "space", {"type", "family", "n", "k"});
  std::string type = optional_of<std::string>(space, "space", "type", "group");
  if (type == "group") cfg.space = RunConfig::SpaceType::Group;
  else if (type == "sphere") cfg.space = RunConfig::SpaceType::Sphere;
  else if (type == "stiefel") cfg.space = RunConfig::SpaceType::Stiefel;
  else throw ConfigError("space.type must be group|sphere|stiefel");
  cfg.n = optional_of<int>(space, "space", "n", 3);
  if (cfg.n < 2) throw ConfigError("space.n must be >= 2");
  if (cfg.space == RunConfig::SpaceType::Group) {
    std::string fam = optional_of<std::string>(space, "space", "family", "SO");
    if (fam == "SO") cfg.family = GroupFamily::SOn;
    else if (fam == "SL") cfg.family = GroupFamily::SLn;
    else if (fam == "GL+") cfg.family = GroupFamily::GLPlus;
    else throw ConfigError("space.family must be SO|SL|GL+");
  } else {
    cfg.family = GroupFamily::SOn;
    if (space.contains("family") && space.at("family").get<std::string>() != "SO")
      throw ConfigError("quotient spaces are built on SO(n)");
  }
  if (cfg.space == RunConfig::SpaceType::Stiefel) {
    cfg.stiefel_k = require<int>(space, "space", "k");
    if (cfg.stiefel_k < 1 || cfg.stiefel_k >= cfg.n)
      throw ConfigError("space.k must satisfy 1 <= k < n");
  }

  std::string metric = optional_of<std::string>(root, "config", "metric", "trace");
  if (metric == "trace") cfg.metric = MetricFlavor::TraceForm;
  else if (metric == "neg_killing") cfg.metric = MetricFlavor::NegKilling;
  else throw ConfigError("metric must be trace|neg_killing");
  if (cfg.metric == MetricFlavor::NegKilling && cfg.family != GroupFamily::SOn)
    throw ConfigError("neg_killing metric is only positive definite on SO(n)");

  const json& pot = root.contains("potential") ? root.at("potential") : json::object();
  check_keys(pot, "potential", {"name", "beta", "U", "mu", "kappa"});
  cfg.potential_name = optional_of<std::string>(pot, "potential", "name", "constant");
  if (cfg.potential_name == "gauge") {
    cfg.beta = optional_of<double>(pot, "potential", "beta", 1.0);
    cfg.gauge_u = pot.contains("U") ? parse_matrix(pot.at("U"), "potential.U")
                                    : Eigen::MatrixXd::Identity(cfg.n, cfg.n);
    if (cfg.gauge_u.rows() != cfg.n || cfg.gauge_u.cols() != cfg.n)
      throw ConfigError("potential.U must be n x n");
  } else if (cfg.potential_name == "vmf") {
    if (cfg.space == RunConfig::SpaceType::Group)
      throw ConfigError("vmf potential requires a sphere or stiefel space");
    cfg.vmf_kappa = optional_of<double>(pot, "potential", "kappa", 1.0);
    if (cfg.vmf_kappa < 0) throw ConfigError("potential.kappa must be >= 0");
    if (pot.contains("mu")) {
      Eigen::MatrixXd m = parse_matrix(json::array({pot.at("mu")}), "potential.mu");
      cfg.vmf_mu = m.row(0).transpose();
    } else {
      cfg.vmf_mu = Eigen::VectorXd::Unit(cfg.n, cfg.n - 1);
    }
    if (cfg.vmf_mu.size() != cfg.n) throw ConfigError("potential.mu must have length n");
    if (std::abs(cfg.vmf_mu.norm() - 1.0) > 1e-8)
      throw ConfigError("potential.mu must be a unit vector");
  } else if (cfg.potential_name != "constant") {
    throw ConfigError("potential.name must be constant|gauge|vmf");
  }

  const json& integ = root.contains("integrator") ? root.at("integrator") : json::object();
  check_keys(integ, "integrator", {"scheme", "step_size", "n_steps", "lambda"});
  std::string scheme = optional_of<std::string>(integ, "integrator", "scheme", "leapfrog");
  if (scheme == "leapfrog") cfg.scheme.kind = IntegratorScheme::Leapfrog;
  else if (scheme == "omelyan") cfg.scheme.kind = IntegratorScheme::Omelyan;
  else if (scheme == "force_gradient") cfg.scheme.kind = IntegratorScheme::ForceGradient;
  else throw ConfigError("integrator.scheme must be leapfrog|omelyan|force_gradient");
  cfg.scheme.step_size = optional_of<double>(integ, "integrator", "step_size", 0.1);
  cfg.scheme.n_steps = optional_of<int>(integ, "integrator", "n_steps", 10);
  cfg.scheme.lambda = optional_of<double>(integ, "integrator", "lambda", 0.1931833);
  if (cfg.scheme.step_size <= 0) throw ConfigError("integrator.step_size must be > 0");
  if (cfg.scheme.n_steps <= 0) throw ConfigError("integrator.n_steps must be > 0");
  if (!(cfg.scheme.lambda > 0 && cfg.scheme.lambda < 0.5))
    throw ConfigError("integrator.lambda must lie in (0, 1/2)");

  cfg.chains = optional_of<int>(root, "config", "chains", 1);
  cfg.n_samples = optional_of<int>(root, "config", "n_samples", 1000);
  cfg.burn_in = optional_of<int>(root, "config", "burn_in", 100);
  cfg.thinning = optional_of<int>(root, "config", "thinning", 1);
  cfg.seed = optional_of<std::uint64_t>(root, "config", "seed", 0);
  if (cfg.chains < 1) throw ConfigError("chains must be >= 1");
  if (cfg.n_samples < 1) throw ConfigError("n_samples must be >= 1");
  if (cfg.burn_in < 0) throw ConfigError("burn_in must be >= 0");
  if (cfg.thinning < 1) throw ConfigError("thinning must be >= 1");

  const json& out = root.contains("output") ? root.at("output") : json::object();
  check_keys(out, "output", {"format"});
  cfg.output_format = optional_of<std::string>(out, "output", "format", "csv");
  if (cfg.output_format != "csv" && cfg.output_format != "jsonl")
    throw ConfigError("output.format must be csv|jsonl");

  const json& diag = root.contains("diagnostics") ? root.at("diagnostics") : json::object();
  check_keys(diag, "diagnostics", {"ess", "energy_scan"});
  cfg.compute_ess = optional_of<bool>(diag, "diagnostics", "ess", true);
  cfg.energy_scan = optional_of<bool>(diag, "diagnostics", "energy_scan", false);

  cfg.max_blowup_fraction =
      optional_of<double>(root, "config", "max_blowup_fraction", 0.5);
  if (cfg.max_blowup_fraction < 0 || cfg.max_blowup_fraction > 1)
    throw ConfigError("max_blowup_fraction must lie in [0, 1]");

  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  return parse_config(doc);
}

nlohmann::json config_to_json(const RunConfig& cfg) {
  using nlohmann::json;
  json space;
  space["type"] = cfg.space == RunConfig::SpaceType::Group    ? "group"
                  : cfg.space == RunConfig::SpaceType::Sphere ? "sphere"
                                                              : "stiefel";
  space["n"] = cfg.n;
  if (cfg.space == RunConfig::SpaceType::Group)
    space["family"] = cfg.family == GroupFamily::SOn   ? "SO"
                      : cfg.family == GroupFamily::SLn ? "SL"
                                                       : "GL+";
  if (cfg.space == RunConfig::SpaceType::Stiefel) space["k"] = cfg.stiefel_k;

  json pot;
  pot["name"] = cfg.potential_name;
  if (cfg.potential_name == "gauge") {
    pot["beta"] = cfg.beta;
    json u = json::array();
    for (int i = 0; i < cfg.gauge_u.rows(); ++i) {
      json row = json::array();
      for (int j = 0; j < cfg.gauge_u.cols(); ++j) row.push_back(cfg.gauge_u(i, j));
      u.push_back(row);
    }
    pot["U"] = u;
  } else if (cfg.potential_name == "vmf") {
    pot["kappa"] = cfg.vmf_kappa;
    json mu = json::array();
    for (int i = 0; i < cfg.vmf_mu.size(); ++i) mu.push_back(cfg.vmf_mu(i));
    pot["mu"] = mu;
  }

  json integ;
  integ["scheme"] = cfg.scheme.kind == IntegratorScheme::Leapfrog  ? "leapfrog"
                    : cfg.scheme.kind == IntegratorScheme::Omelyan ? "omelyan"
                                                                   : "force_gradient";
  integ["step_size"] = cfg.scheme.step_size;
  integ["n_steps"] = cfg.scheme.n_steps;
  integ["lambda"] = cfg.scheme.lambda;

  json root;
  root["space"] = space;
  root["metric"] = cfg.metric == MetricFlavor::TraceForm ? "trace" : "neg_killing";
  root["potential"] = pot;
  root["integrator"] = integ;
  root["chains"] = cfg.chains;
  root["n_samples"] = cfg.n_samples;
  root["burn_in"] = cfg.burn_in;
  root["thinning"] = cfg.thinning;
  root["seed"] = cfg.seed;
  root["output"] = {{"format", cfg.output_format}};
  root["diagnostics"] = {{"ess", cfg.compute_ess}, {"energy_scan", cfg.energy_scan}};
  root["max_blowup_fraction"] = cfg.max_blowup_fraction;
  return root;
}

}  // namespace liehmc
