#include "liehmc/flows.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace liehmc {

GroupSystem make_system(const LieGroupSpec& spec, const MetricData& metric,
                        GeodesicKind geodesic, ExpMethod exp_method) {
  GroupSystem sys{spec, metric, structure_constants(spec, metric),
                  canonical_split(spec), geodesic, exp_method};
  std::mt19937_64 rng(0x5eed);
  std::normal_distribution<double> gauss;
  auto random_coeff = [&] {
    Eigen::VectorXd u(spec.dim);
    for (int i = 0; i < spec.dim; ++i) u(i) = gauss(rng);
    return u;
  };
  if (geodesic.kind == GeodesicKind::BiInvariant) {
    for (int trial = 0; trial < 20; ++trial) {
      Eigen::VectorXd u = random_coeff(), w = random_coeff();
      Eigen::VectorXd lhs = ad_star(sys.sc, metric, u, w);
      Eigen::VectorXd rhs = -ad(sys.sc, u, w);
      if ((lhs - rhs).cwiseAbs().maxCoeff() > 1e-8 * (1.0 + rhs.norm()))
        throw std::invalid_argument("metric is not ad-invariant; BiInvariant geodesics invalid");
    }
  } else if (geodesic.kind == GeodesicKind::ReductiveMatrix) {
    for (int trial = 0; trial < 20; ++trial) {
      Eigen::VectorXd s = sys.split.P_p * random_coeff();
      Eigen::VectorXd a = sys.split.P_k * random_coeff();
      if (a.norm() == 0.0) continue;  // SO(n) has empty p; skip
      Eigen::VectorXd lhs = ad_star(sys.sc, metric, s, a);
      Eigen::VectorXd rhs = ad(sys.sc, s, a);
      if ((lhs - rhs).cwiseAbs().maxCoeff() > 1e-8 * (1.0 + rhs.norm()))
        throw std::invalid_argument(
            "metric fails ad*_S A = [S,A]; ReductiveMatrix geodesics invalid");
    }
  }
  return sys;
}

double kinetic_energy(const GroupSystem& sys, const Eigen::VectorXd& v) {
  return 0.5 * v.dot(sys.metric.g * v);
}

double hamiltonian(const GroupSystem& sys, const Potential& pot, const PhaseState& s) {
  return pot.eval(s.q) + kinetic_energy(sys, s.v);
}

PhaseState potential_flow(const GroupSystem& sys, const PhaseState& s, double t,
                          const Potential& pot) {
  PhaseState out = s;
  out.v -= t * left_derivative(pot, sys.spec, sys.metric, s.q);
  return out;
}

PhaseState geodesic_flow_biinvariant(const GroupSystem& sys, const PhaseState& s, double t) {
  PhaseState out = s;
  out.q = s.q * mexp(t * coeff_to_matrix(sys.spec, s.v), sys.exp_method);
  return out;
}

PhaseState geodesic_flow_reductive_matrix(const GroupSystem& sys, const PhaseState& s,
                                          double t) {
  Eigen::MatrixXd vm = coeff_to_matrix(sys.spec, s.v);
  // v_p - v_k = v^T and 2 v_k = v - v^T at matrix level
  Eigen::MatrixXd vk2 = vm - vm.transpose();
  Eigen::MatrixXd ek = mexp(t * vk2, sys.exp_method);
  PhaseState out = s;
  out.q = s.q * mexp(t * vm.transpose(), sys.exp_method) * ek;
  Eigen::MatrixXd vp = 0.5 * (vm + vm.transpose());
  Eigen::MatrixXd vt = 0.5 * vk2 + mexp(-t * vk2, sys.exp_method) * vp * ek;
  out.v = matrix_to_coeff(sys.spec, vt);
  return out;
}

PhaseState geodesic_flow_numeric(const GroupSystem& sys, const PhaseState& s, double t,
                                 int substeps) {
  if (substeps < 1) throw std::invalid_argument("substeps must be >= 1");
  const double h = t / substeps;
  PhaseState cur = s;
  for (int step = 0; step < substeps; ++step) {
    Eigen::VectorXd k1 = euler_arnold_rhs(sys, cur.v);
    Eigen::VectorXd k2 = euler_arnold_rhs(sys, cur.v + 0.5 * h * k1);
    Eigen::VectorXd k3 = euler_arnold_rhs(sys, cur.v + 0.5 * h * k2);
    Eigen::VectorXd k4 = euler_arnold_rhs(sys, cur.v + h * k3);
    Eigen::VectorXd v_mid = cur.v + 0.5 * h * k2;
    cur.q = cur.q * mexp(h * coeff_to_matrix(sys.spec, v_mid), ExpMethod::scaling_squaring());
    cur.v += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!cur.v.allFinite() || !cur.q.allFinite())
      throw std::runtime_error("numeric geodesic flow diverged");
  }
  return cur;
}

PhaseState geodesic_flow(const GroupSystem& sys, const PhaseState& s, double t) {
  switch (sys.geodesic.kind) {
    case GeodesicKind::BiInvariant:
      return geodesic_flow_biinvariant(sys, s, t);
    case GeodesicKind::ReductiveMatrix:
      return geodesic_flow_reductive_matrix(sys, s, t);
    case GeodesicKind::NumericEulerArnold:
      return geodesic_flow_numeric(sys, s, t, sys.geodesic.substeps);
  }
  throw std::logic_error("unreachable");
}

Eigen::VectorXd euler_arnold_rhs(const GroupSystem& sys, const Eigen::VectorXd& v) {
  return ad_star(sys.sc, sys.metric, v, v);
}

}  // namespace liehmc
