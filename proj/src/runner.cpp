#include "liehmc/runner.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "liehmc/diagnostics.hpp"

namespace liehmc {

namespace {

std::string fmt17(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

struct Problem {
  GroupSystem sys;
  Potential pot;
  Eigen::MatrixXd q0;
  std::optional<QuotientSpec> quotient;
};

Problem build_problem(const RunConfig& cfg) {
  Problem p;
  LieGroupSpec spec;
  std::optional<QuotientSpec> quot;
  if (cfg.space == RunConfig::SpaceType::Group) {
    spec = build_group(cfg.family, cfg.n);
  } else if (cfg.space == RunConfig::SpaceType::Sphere) {
    quot = make_sphere(cfg.n);
    spec = quot->group;
  } else {
    quot = make_stiefel(cfg.n, cfg.stiefel_k);
    spec = quot->group;
  }
  MetricData metric = make_metric(spec, cfg.metric);
  GeodesicKind kind = spec.family == GroupFamily::SOn
                          ? GeodesicKind::bi_invariant()
                          : GeodesicKind::reductive_matrix();
  p.sys = make_system(spec, metric, kind);
  p.quotient = quot;
  p.q0 = Eigen::MatrixXd::Identity(cfg.n, cfg.n);

  if (cfg.potential_name == "constant") {
    p.pot = constant_potential();
  } else if (cfg.potential_name == "gauge") {
    p.pot = gauge_potential(cfg.gauge_u, cfg.beta);
  } else {
    p.pot = vmf_sphere_lift(cfg.n, cfg.vmf_mu, cfg.vmf_kappa);
  }
  return p;
}

void write_samples_header(std::ostream& out, const RunConfig& cfg, int value_cols) {
  if (cfg.output_format == "csv") {
    out << "# liehmc samples schema_version=" << kOutputSchemaVersion;
    if (cfg.space == RunConfig::SpaceType::Group)
      out << " layout=q_row_major";
    else if (cfg.space == RunConfig::SpaceType::Sphere)
      out << " layout=sphere_unit_vector";
    else
      out << " layout=stiefel_column_major";
    out << " value_cols=" << value_cols << "\n";
    out << "index,chain";
    for (int i = 0; i < value_cols; ++i) out << ",x" << i;
    out << ",h_before,h_after,accept\n";
  }
}

}  // namespace

RunResult run(const RunConfig& cfg, const std::string& output_dir, bool quiet) {
  RunResult res;
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(output_dir, ec);
  if (ec) {
    res.status = RunStatus::IoError;
    res.message = "cannot create output directory: " + output_dir;
    return res;
  }

  Problem prob;
  try {
    prob = build_problem(cfg);
  } catch (const std::exception& e) {
    res.status = RunStatus::ConfigError;
    res.message = e.what();
    return res;
  }

  if (prob.quotient &&
      !k_invariance_check(prob.sys, prob.pot, prob.quotient->split)) {
    res.status = RunStatus::KInvarianceError;
    res.message = "potential failed the K-invariance gate";
    return res;
  }

  res.samples_path = (fs::path(output_dir) /
                      (cfg.output_format == "csv" ? "samples.csv" : "samples.jsonl"))
                         .string();
  res.report_path = (fs::path(output_dir) / "report.json").string();
  res.manifest_path = (fs::path(output_dir) / "manifest.json").string();

  std::ofstream samples(res.samples_path, std::ios::trunc);
  if (!samples) {
    res.status = RunStatus::IoError;
    res.message = "cannot open samples file";
    return res;
  }

  const int value_cols =
      prob.quotient ? cfg.n * prob.quotient->rep_cols : cfg.n * cfg.n;
  write_samples_header(samples, cfg, value_cols);

  std::vector<ChainRecord> records;
  std::vector<double> observable;  // tr(q) for groups, first rep column dot mu / x0

  long total_blowups = 0;
  long total_iters = 0;
  for (int chain = 0; chain < cfg.chains; ++chain) {
    HmcConfig hc;
    hc.scheme = cfg.scheme;
    hc.n_samples = cfg.n_samples;
    hc.burn_in = cfg.burn_in;
    hc.thinning = cfg.thinning;
    hc.seed = cfg.seed;
    hc.chain_id = static_cast<std::uint64_t>(chain);
    if (prob.quotient) hc.horizontal = prob.quotient->split;

    ChainRecord rec;
    try {
      rec = hmc_chain(prob.sys, prob.pot, prob.q0, hc);
    } catch (const std::exception& e) {
      res.status = RunStatus::ConfigError;
      res.message = e.what();
      return res;
    }
    total_blowups += rec.n_blowups;
    total_iters += cfg.burn_in + cfg.n_samples * cfg.thinning;

    // stream this chain's samples
    for (const auto& s : rec.samples) {
      Eigen::MatrixXd value;
      if (prob.quotient) {
        value = representative(*prob.quotient, s.q);
      } else {
        value = s.q;
      }
      if (cfg.output_format == "csv") {
        samples << s.index << "," << chain;
        if (prob.quotient) {
          // column-major flattening; a plain vector for the sphere
          for (int j = 0; j < value.cols(); ++j)
            for (int i = 0; i < value.rows(); ++i) samples << "," << fmt17(value(i, j));
        } else {
          for (int i = 0; i < value.rows(); ++i)
            for (int j = 0; j < value.cols(); ++j) samples << "," << fmt17(value(i, j));
        }
        samples << "," << fmt17(s.h_before) << "," << fmt17(s.h_after) << ","
                << (s.accepted ? 1 : 0) << "\n";
      } else {
        nlohmann::json line;
        line["schema_version"] = kOutputSchemaVersion;
        line["index"] = s.index;
        line["chain"] = chain;
        nlohmann::json vals = nlohmann::json::array();
        if (prob.quotient) {
          for (int j = 0; j < value.cols(); ++j)
            for (int i = 0; i < value.rows(); ++i) vals.push_back(fmt17(value(i, j)));
        } else {
          for (int i = 0; i < value.rows(); ++i)
            for (int j = 0; j < value.cols(); ++j) vals.push_back(fmt17(value(i, j)));
        }
        line["value"] = vals;
        line["h_before"] = fmt17(s.h_before);
        line["h_after"] = fmt17(s.h_after);
        line["accept"] = s.accepted;
        samples << line.dump() << "\n";
      }
      if (prob.quotient) {
        if (cfg.potential_name == "vmf")
          observable.push_back(cfg.vmf_mu.dot(value.col(0)));
        else
          observable.push_back(value(0, 0));
      } else {
        observable.push_back(s.q.trace());
      }
    }
    records.push_back(std::move(rec));
  }
  samples.close();

  // report
  nlohmann::json report;
  report["schema_version"] = kOutputSchemaVersion;
  double acc = 0, mean_dh = 0, max_dh = 0, max_leak = 0, max_defect = 0;
  for (const auto& r : records) {
    acc += r.acceptance_rate;
    mean_dh += r.mean_abs_delta_h;
    max_dh = std::max(max_dh, r.max_abs_delta_h);
    max_leak = std::max(max_leak, r.max_vertical_leakage);
    max_defect = std::max(max_defect, r.max_membership_defect);
  }
  report["acceptance_rate"] = acc / records.size();
  report["mean_abs_delta_h"] = mean_dh / records.size();
  report["max_abs_delta_h"] = max_dh;
  report["noether_leakage_max"] = max_leak;
  report["membership_defect_max"] = max_defect;
  report["n_blowups"] = total_blowups;

  if (cfg.compute_ess && static_cast<int>(observable.size()) >= 100) {
    EssResult e = ess(observable);
    report["ess"] = e.ess;
    report["ess_degenerate"] = e.degenerate;
    double mean = 0;
    for (double x : observable) mean += x;
    mean /= observable.size();
    double var = 0;
    for (double x : observable) var += (x - mean) * (x - mean);
    var /= observable.size();
    report["observable_mean"] = mean;
    report["observable_sd"] = std::sqrt(var);
    if (prob.quotient && cfg.potential_name == "vmf") {
      // mean resultant length of the sphere samples
      Eigen::VectorXd sum = Eigen::VectorXd::Zero(cfg.n);
      int count = 0;
      for (const auto& r : records)
        for (const auto& s : r.samples) {
          sum += representative(*prob.quotient, s.q).col(0);
          ++count;
        }
      report["mean_resultant_length"] = (sum / count).norm();
    }
  }

  if (cfg.energy_scan) {
    std::vector<double> hs{0.2, 0.1, 0.05, 0.025};
    ScalingFit fit = energy_error_scan(prob.sys, prob.pot, prob.q0, cfg.scheme.kind, hs,
                                       1.0, 50, cfg.seed, cfg.scheme.lambda);
    nlohmann::json f;
    f["step_sizes"] = fit.step_sizes;
    f["errors"] = fit.errors;
    f["slope"] = fit.slope;
    f["r_squared"] = fit.r_squared;
    f["exact"] = fit.exact;
    report["energy_scan"] = f;
  }

  std::ofstream rep(res.report_path, std::ios::trunc);
  if (!rep) {
    res.status = RunStatus::IoError;
    res.message = "cannot open report file";
    return res;
  }
  rep << report.dump(2) << "\n";
  rep.close();

  nlohmann::json manifest;
  manifest["liehmc_version"] = kLibraryVersion;
  manifest["schema_version"] = kOutputSchemaVersion;
  manifest["config"] = config_to_json(cfg);
  std::ofstream man(res.manifest_path, std::ios::trunc);
  if (!man) {
    res.status = RunStatus::IoError;
    res.message = "cannot open manifest file";
    return res;
  }
  man << manifest.dump(2) << "\n";
  man.close();

  double blowup_frac = total_iters > 0 ? static_cast<double>(total_blowups) / total_iters : 0;
  if (blowup_frac > cfg.max_blowup_fraction) {
    res.status = RunStatus::BlowupCeiling;
    res.message = "blow-up rate exceeded the configured ceiling";
    return res;
  }

  if (!quiet)
    std::cerr << "liehmc: wrote " << res.samples_path << " (acceptance "
              << report["acceptance_rate"] << ")\n";
  return res;
}

}  // namespace liehmc
