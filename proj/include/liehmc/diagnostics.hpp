#ifndef LIEHMC_DIAGNOSTICS_HPP
#define LIEHMC_DIAGNOSTICS_HPP

#include <vector>

#include "liehmc/sampler.hpp"

namespace liehmc {

struct ScalingFit {
  std::vector<double> step_sizes;
  std::vector<double> errors;  // mean |dH| per step size
  double slope = 0.0;          // of log|dH| vs log h
  double r_squared = 0.0;
  bool exact = false;          // all errors at roundoff, no fit
};

/// Mean |dH| over n_trajectories per step size at fixed trajectory time,
/// with a least-squares log-log slope. Needs >= 3 step sizes spanning a
/// factor of >= 4.
ScalingFit energy_error_scan(const GroupSystem& sys, const Potential& pot,
                             const Eigen::MatrixXd& q0, IntegratorScheme::Kind kind,
                             const std::vector<double>& step_sizes, double traj_time,
                             int n_trajectories, std::uint64_t seed,
                             double lambda = 0.1931833);

struct EssResult {
  double ess = 0.0;
  bool degenerate = false;  // constant series
};

/// Initial-positive-sequence autocorrelation estimator.
EssResult ess(const std::vector<double>& series);

}  // namespace liehmc

#endif
