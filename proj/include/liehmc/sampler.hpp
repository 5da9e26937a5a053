#ifndef LIEHMC_SAMPLER_HPP
#define LIEHMC_SAMPLER_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "liehmc/integrators.hpp"

namespace liehmc {

struct HmcConfig {
  IntegratorScheme scheme;
  int n_samples = 1000;
  int burn_in = 100;
  std::uint64_t seed = 0;
  std::uint64_t chain_id = 0;
  int thinning = 1;
  std::optional<ReductiveSplit> horizontal;  // G/K mode
};

struct SampleRecord {
  int index;
  std::uint64_t chain_id;
  Eigen::MatrixXd q;
  double h_before;
  double h_after;
  bool accepted;
};

struct ChainRecord {
  std::vector<SampleRecord> samples;
  double acceptance_rate = 0.0;
  double mean_abs_delta_h = 0.0;
  double max_abs_delta_h = 0.0;
  int n_blowups = 0;
  double max_vertical_leakage = 0.0;   // max ||P_k v|| over trajectories (G/K mode)
  double max_membership_defect = 0.0;
};

/// Per-chain deterministic RNG stream derived from (seed, chain index).
std::mt19937_64 chain_rng(std::uint64_t seed, std::uint64_t chain_id);

/// Draw v with density proportional to exp(-v^T g v / 2), i.e. covariance
/// g^{-1}. In horizontal mode the draw is restricted to the p-block and
/// P_k v = 0 exactly.
Eigen::VectorXd refresh_momentum(std::mt19937_64& rng, const MetricData& metric,
                                 const std::optional<ReductiveSplit>& split = std::nullopt);

/// The k-components of g v (covector of v paired against the k-basis).
Eigen::VectorXd noether_current(const Eigen::VectorXd& v, const ReductiveSplit& split,
                                const MetricData& metric);

/// Potential must vanish in the k-directions at random probe points before
/// a horizontal chain may start.
bool k_invariance_check(const GroupSystem& sys, const Potential& pot,
                        const ReductiveSplit& split, int n_probes = 20,
                        double tol = 1e-8);

/// Standard HMC targeting density proportional to exp(-V) w.r.t. Haar
/// measure: refresh v, integrate, accept with min(1, exp(-dH)).
/// |dH| > 50 or a non-finite trajectory counts as a blow-up and rejects.
ChainRecord hmc_chain(const GroupSystem& sys, const Potential& pot,
                      const Eigen::MatrixXd& q0, const HmcConfig& config);

}  // namespace liehmc

#endif
