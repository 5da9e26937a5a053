#include "liehmc/sampler.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace liehmc {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::mt19937_64 chain_rng(std::uint64_t seed, std::uint64_t chain_id) {
  return std::mt19937_64(splitmix64(splitmix64(seed) ^ chain_id));
}

Eigen::VectorXd refresh_momentum(std::mt19937_64& rng, const MetricData& metric,
                                 const std::optional<ReductiveSplit>& split) {
  const int d = static_cast<int>(metric.g.rows());
  std::normal_distribution<double> gauss;
  if (!split) {
    Eigen::VectorXd z(d);
    for (int i = 0; i < d; ++i) z(i) = gauss(rng);
    // g = L L^T, v = L^{-T} z has covariance g^{-1}
    return metric.chol.transpose().triangularView<Eigen::Upper>().solve(z);
  }
  const auto& p = split->p_indices;
  const int dp = static_cast<int>(p.size());
  Eigen::MatrixXd gpp(dp, dp);
  for (int a = 0; a < dp; ++a)
    for (int b = 0; b < dp; ++b) gpp(a, b) = metric.g(p[a], p[b]);
  Eigen::LLT<Eigen::MatrixXd> llt(gpp);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("metric restricted to p is not positive definite");
  Eigen::VectorXd z(dp);
  for (int i = 0; i < dp; ++i) z(i) = gauss(rng);
  Eigen::VectorXd vp =
      Eigen::MatrixXd(llt.matrixL()).transpose().triangularView<Eigen::Upper>().solve(z);
  Eigen::VectorXd v = Eigen::VectorXd::Zero(d);
  for (int a = 0; a < dp; ++a) v(p[a]) = vp(a);
  return v;
}

Eigen::VectorXd noether_current(const Eigen::VectorXd& v, const ReductiveSplit& split,
                                const MetricData& metric) {
  Eigen::VectorXd gv = metric.g * v;
  Eigen::VectorXd out(split.k_indices.size());
  for (std::size_t a = 0; a < split.k_indices.size(); ++a) out(a) = gv(split.k_indices[a]);
  return out;
}

bool k_invariance_check(const GroupSystem& sys, const Potential& pot,
                        const ReductiveSplit& split, int n_probes, double tol) {
  std::mt19937_64 rng(0xdecafULL);
  std::normal_distribution<double> gauss;
  for (int probe = 0; probe < n_probes; ++probe) {
    Eigen::VectorXd u(sys.spec.dim);
    for (int i = 0; i < sys.spec.dim; ++i) u(i) = 0.5 * gauss(rng);
    Eigen::MatrixXd q = mexp(coeff_to_matrix(sys.spec, u));
    Eigen::VectorXd b = left_derivative_lowered(pot, sys.spec, q);
    for (int j : split.k_indices)
      if (std::abs(b(j)) > tol) return false;
  }
  return true;
}

ChainRecord hmc_chain(const GroupSystem& sys, const Potential& pot,
                      const Eigen::MatrixXd& q0, const HmcConfig& config) {
  if (config.n_samples <= 0) throw std::invalid_argument("n_samples must be positive");
  if (config.thinning < 1) throw std::invalid_argument("thinning must be >= 1");
  if (!group_membership(sys.spec, q0).ok)
    throw std::invalid_argument("initial point is not on the group");
  if (config.horizontal &&
      !k_invariance_check(sys, pot, *config.horizontal))
    throw std::invalid_argument("potential is not K-invariant; horizontal mode refused");

  auto rng = chain_rng(config.seed, config.chain_id);
  Eigen::MatrixXd q = q0;
  ChainRecord rec;
  rec.samples.reserve(config.n_samples);

  const int total = config.burn_in + config.n_samples * config.thinning;
  long n_accept = 0;
  double sum_dh = 0.0;
  long n_dh = 0;
  int emitted = 0;

  for (int iter = 0; iter < total && emitted < config.n_samples; ++iter) {
    Eigen::VectorXd v = refresh_momentum(rng, sys.metric, config.horizontal);
    PhaseState state{q, v};
    const double h0 = hamiltonian(sys, pot, state);

    bool blowup = false;
    PhaseState prop = state;
    try {
      for (int step = 0; step < config.scheme.n_steps; ++step) {
        prop = integrator_step(sys, prop, config.scheme, pot);
        if (config.horizontal) {
          double leak = (config.horizontal->P_k * prop.v).norm();
          rec.max_vertical_leakage = std::max(rec.max_vertical_leakage, leak);
        }
      }
    } catch (const std::runtime_error&) {
      blowup = true;
    }

    double h1 = blowup ? std::numeric_limits<double>::infinity()
                       : hamiltonian(sys, pot, prop);
    double dh = h1 - h0;
    bool accept = false;
    if (blowup || !std::isfinite(dh) || std::abs(dh) > 50.0) {
      ++rec.n_blowups;
    } else {
      sum_dh += std::abs(dh);
      rec.max_abs_delta_h = std::max(rec.max_abs_delta_h, std::abs(dh));
      ++n_dh;
      std::uniform_real_distribution<double> unif(0.0, 1.0);
      accept = unif(rng) < std::exp(-dh);
    }
    if (accept) {
      q = prop.q;
      ++n_accept;
      rec.max_membership_defect =
          std::max(rec.max_membership_defect, group_membership(sys.spec, q).defect);
    }

    if (iter >= config.burn_in && (iter - config.burn_in) % config.thinning == 0) {
      rec.samples.push_back({emitted, config.chain_id, q, h0, h1, accept});
      ++emitted;
    }
  }

  rec.acceptance_rate = static_cast<double>(n_accept) / total;
  rec.mean_abs_delta_h = n_dh > 0 ? sum_dh / n_dh : 0.0;
  return rec;
}

}  // namespace liehmc
