#include "liehmc/diagnostics.hpp"

#include <cmath>
#include <stdexcept>

namespace liehmc {

ScalingFit energy_error_scan(const GroupSystem& sys, const Potential& pot,
                             const Eigen::MatrixXd& q0, IntegratorScheme::Kind kind,
                             const std::vector<double>& step_sizes, double traj_time,
                             int n_trajectories, std::uint64_t seed, double lambda) {
  if (step_sizes.size() < 3) throw std::invalid_argument("need >= 3 step sizes");
  double hmin = step_sizes.front(), hmax = step_sizes.front();
  for (double h : step_sizes) {
    hmin = std::min(hmin, h);
    hmax = std::max(hmax, h);
  }
  if (hmax < 4.0 * hmin)
    throw std::invalid_argument("step sizes must span a factor of >= 4");

  ScalingFit fit;
  fit.step_sizes = step_sizes;
  for (double h : step_sizes) {
    IntegratorScheme scheme{kind, h, std::max(1, static_cast<int>(std::lround(traj_time / h))),
                            lambda};
    auto rng = chain_rng(seed, 0);
    double sum = 0.0;
    for (int traj = 0; traj < n_trajectories; ++traj) {
      PhaseState s{q0, refresh_momentum(rng, sys.metric)};
      double h0 = hamiltonian(sys, pot, s);
      for (int step = 0; step < scheme.n_steps; ++step)
        s = integrator_step(sys, s, scheme, pot);
      sum += std::abs(hamiltonian(sys, pot, s) - h0);
    }
    fit.errors.push_back(sum / n_trajectories);
  }

  double max_err = 0.0;
  for (double e : fit.errors) max_err = std::max(max_err, e);
  if (max_err < 1e-13) {
    fit.exact = true;
    return fit;
  }

  // unweighted least squares on (log h, log err)
  const int m = static_cast<int>(step_sizes.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (int i = 0; i < m; ++i) {
    double x = std::log(step_sizes[i]);
    double y = std::log(fit.errors[i]);
    sx += x; sy += y; sxx += x * x; sxy += x * y; syy += y * y;
  }
  double denom = m * sxx - sx * sx;
  fit.slope = (m * sxy - sx * sy) / denom;
  double ss_tot = syy - sy * sy / m;
  double ss_res = 0.0;
  double intercept = (sy - fit.slope * sx) / m;
  for (int i = 0; i < m; ++i) {
    double r = std::log(fit.errors[i]) - (intercept + fit.slope * std::log(step_sizes[i]));
    ss_res += r * r;
  }
  fit.r_squared = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
  return fit;
}

EssResult ess(const std::vector<double>& series) {
  const int n = static_cast<int>(series.size());
  if (n < 100) throw std::invalid_argument("ess needs a series of length >= 100");
  double mean = 0.0;
  for (double x : series) mean += x;
  mean /= n;
  double var = 0.0;
  for (double x : series) var += (x - mean) * (x - mean);
  var /= n;
  if (var <= 1e-24 * (1.0 + mean * mean)) return {static_cast<double>(n), true};

  auto rho = [&](int lag) {
    double c = 0.0;
    for (int i = 0; i + lag < n; ++i) c += (series[i] - mean) * (series[i + lag] - mean);
    return c / (n * var);
  };

  // Geyer initial positive sequence: sum pair sums while they stay positive
  double tau = 1.0;
  for (int m = 0; 2 * m + 2 < n / 2; ++m) {
    double pair = rho(2 * m + 1) + rho(2 * m + 2);
    if (pair <= 0.0) break;
    tau += 2.0 * pair;
  }
  return {n / tau, false};
}

}  // namespace liehmc
