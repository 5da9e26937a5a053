#include "liehmc/homogeneous.hpp"

#include <stdexcept>

namespace liehmc {

QuotientSpec make_sphere(int n) {
  if (n < 2) throw std::invalid_argument("sphere quotient needs n >= 2");
  LieGroupSpec g = build_group(GroupFamily::SOn, n);
  return {QuotientSpec::Sphere, g, 1, subgroup_split(g, 1)};
}

QuotientSpec make_stiefel(int n, int k) {
  if (k < 1 || k >= n) throw std::invalid_argument("stiefel quotient needs 1 <= k < n");
  LieGroupSpec g = build_group(GroupFamily::SOn, n);
  return {QuotientSpec::Stiefel, g, k, subgroup_split(g, k)};
}

Eigen::MatrixXd representative(const QuotientSpec& quot, const Eigen::MatrixXd& q) {
  return q.rightCols(quot.rep_cols);
}

Eigen::VectorXd horizontal_project(const Eigen::VectorXd& v, const ReductiveSplit& split) {
  return split.P_p * v;
}

ConstraintReport constrained_system_check(const GroupSystem& sys,
                                          const std::vector<PhaseState>& trajectory,
                                          const ReductiveSplit& split, double t) {
  ConstraintReport rep{0.0, 0.0};
  for (const auto& s : trajectory) {
    rep.max_vertical_leakage =
        std::max(rep.max_vertical_leakage, (split.P_k * s.v).norm());
    // For v in p the reductive update must collapse to q e^{v t}.
    Eigen::VectorXd vp = split.P_p * s.v;
    PhaseState horiz{s.q, vp};
    Eigen::MatrixXd one_param =
        s.q * mexp(t * coeff_to_matrix(sys.spec, vp), sys.exp_method);
    PhaseState flowed = geodesic_flow(sys, horiz, t);
    rep.max_geodesic_deviation = std::max(
        rep.max_geodesic_deviation, (flowed.q - one_param).cwiseAbs().maxCoeff());
  }
  return rep;
}

QuotientSamples sample_quotient(const QuotientSpec& quot, const GroupSystem& sys,
                                const Potential& pot, const Eigen::MatrixXd& q0,
                                HmcConfig config) {
  config.horizontal = quot.split;
  QuotientSamples out;
  out.chain = hmc_chain(sys, pot, q0, config);
  out.representatives.reserve(out.chain.samples.size());
  for (const auto& s : out.chain.samples)
    out.representatives.push_back(representative(quot, s.q));
  return out;
}

}  // namespace liehmc
