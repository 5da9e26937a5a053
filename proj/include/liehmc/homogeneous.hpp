#ifndef LIEHMC_HOMOGENEOUS_HPP
#define LIEHMC_HOMOGENEOUS_HPP

#include "liehmc/sampler.hpp"

namespace liehmc {

/// Quotients SO(n)/SO(n-k): the sphere S^{n-1} for k = 1, Stiefel frames
/// for k >= 2. K sits in the leading block; representatives are the
/// trailing k columns of q.
struct QuotientSpec {
  enum Kind { Sphere, Stiefel } kind;
  LieGroupSpec group;
  int rep_cols;  // columns of the representative
  ReductiveSplit split;
};

QuotientSpec make_sphere(int n);
QuotientSpec make_stiefel(int n, int k);

/// Trailing rep_cols columns of q (an n-vector for the sphere).
Eigen::MatrixXd representative(const QuotientSpec& quot, const Eigen::MatrixXd& q);

/// P_p v; idempotent.
Eigen::VectorXd horizontal_project(const Eigen::VectorXd& v, const ReductiveSplit& split);

struct ConstraintReport {
  double max_vertical_leakage;   // max ||P_k v|| over the trajectory
  double max_geodesic_deviation; // vs the one-parameter-subgroup form, v in p
};

/// For a trajectory produced under a K-invariant potential with v(0) in p:
/// reports vertical leakage and, where v in p, the deviation of the
/// geodesic update from q e^{v t}.
ConstraintReport constrained_system_check(const GroupSystem& sys,
                                          const std::vector<PhaseState>& trajectory,
                                          const ReductiveSplit& split, double t);

struct QuotientSamples {
  std::vector<Eigen::MatrixXd> representatives;
  ChainRecord chain;
};

/// Runs hmc_chain in horizontal mode and extracts representatives.
QuotientSamples sample_quotient(const QuotientSpec& quot, const GroupSystem& sys,
                                const Potential& pot, const Eigen::MatrixXd& q0,
                                HmcConfig config);

}  // namespace liehmc

#endif
