#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <unsupported/Eigen/MatrixFunctions>

#include "liehmc/integrators.hpp"
#include "test_util.hpp"

using namespace liehmc;
using testutil::random_coeff;
using testutil::random_group_point;

namespace {

GroupSystem so3_system() {
  auto spec = build_group(GroupFamily::SOn, 3);
  return make_system(spec, make_metric(spec, MetricFlavor::TraceForm),
                     GeodesicKind::bi_invariant());
}

Potential bench_potential() {
  Eigen::MatrixXd u(3, 3);
  u << 0.4, -0.9, 0.3, 1.1, 0.2, -0.5, 0.0, 0.8, -0.7;
  return gauge_potential(u, 1.0);
}

double traj_delta_h(const GroupSystem& sys, const Potential& pot, const PhaseState& s0,
                    IntegratorScheme scheme, double total_time) {
  scheme.n_steps = static_cast<int>(std::lround(total_time / scheme.step_size));
  PhaseState s = s0;
  double h0 = hamiltonian(sys, pot, s);
  for (int i = 0; i < scheme.n_steps; ++i) s = integrator_step(sys, s, scheme, pot);
  return std::abs(hamiltonian(sys, pot, s) - h0);
}

}  // namespace

TEST_CASE("degenerate cases") {
  auto sys = so3_system();
  std::mt19937_64 rng(30);
  PhaseState s{random_group_point(rng, sys.spec), random_coeff(rng, 3)};

  SUBCASE("V = 0 reduces every scheme to the geodesic flow of time h") {
    auto zero = constant_potential();
    auto drift = geodesic_flow(sys, s, 0.1);
    for (auto out : {leapfrog_step(sys, s, 0.1, zero),
                     omelyan_step(sys, s, 0.1, 0.1931833, zero),
                     force_gradient_step(sys, s, 0.1, zero)}) {
      CHECK((out.q - drift.q).cwiseAbs().maxCoeff() < 1e-13);
      CHECK((out.v - drift.v).cwiseAbs().maxCoeff() < 1e-13);
    }
  }

  SUBCASE("h = 0 is the identity") {
    auto pot = bench_potential();
    auto out = leapfrog_step(sys, s, 0.0, pot);
    CHECK((out.q - s.q).norm() == 0.0);
    CHECK((out.v - s.v).norm() == 0.0);
  }

  SUBCASE("invalid omelyan lambda rejected") {
    auto pot = bench_potential();
    CHECK_THROWS_AS(omelyan_step(sys, s, 0.1, 0.6, pot), std::invalid_argument);
  }
}

TEST_CASE("energy error scaling under step halving") {
  auto sys = so3_system();
  auto pot = bench_potential();
  std::mt19937_64 rng(31);

  SUBCASE("leapfrog is second order") {
    double sum_ratio = 0;
    int count = 0;
    for (int t = 0; t < 8; ++t) {
      PhaseState s{random_group_point(rng, sys.spec), random_coeff(rng, 3)};
      double e1 = traj_delta_h(sys, pot, s, IntegratorScheme::leapfrog(0.02, 0), 1.0);
      double e2 = traj_delta_h(sys, pot, s, IntegratorScheme::leapfrog(0.01, 0), 1.0);
      if (e2 < 1e-13) continue;
      sum_ratio += e1 / e2;
      ++count;
    }
    double mean_ratio = sum_ratio / count;
    CHECK(mean_ratio > 4.0 * 0.8);
    CHECK(mean_ratio < 4.0 * 1.2);
  }

  SUBCASE("omelyan is second order and beats leapfrog at equal h") {
    double sum_ratio = 0;
    int count = 0;
    for (int t = 0; t < 8; ++t) {
      PhaseState s{random_group_point(rng, sys.spec), random_coeff(rng, 3)};
      double e1 = traj_delta_h(sys, pot, s, IntegratorScheme::omelyan(0.02, 0), 1.0);
      double e2 = traj_delta_h(sys, pot, s, IntegratorScheme::omelyan(0.01, 0), 1.0);
      double lf = traj_delta_h(sys, pot, s, IntegratorScheme::leapfrog(0.02, 0), 1.0);
      CHECK(e1 < lf);
      if (e2 < 1e-13) continue;
      sum_ratio += e1 / e2;
      ++count;
    }
    double mean_ratio = sum_ratio / count;
    CHECK(mean_ratio > 4.0 * 0.8);
    CHECK(mean_ratio < 4.0 * 1.2);
  }

  SUBCASE("force gradient is fourth order") {
    double sum_ratio = 0;
    int count = 0;
    for (int t = 0; t < 8; ++t) {
      PhaseState s{random_group_point(rng, sys.spec), random_coeff(rng, 3)};
      double e1 = traj_delta_h(sys, pot, s, IntegratorScheme::force_gradient(0.1, 0), 1.0);
      double e2 = traj_delta_h(sys, pot, s, IntegratorScheme::force_gradient(0.05, 0), 1.0);
      if (e2 < 1e-12) continue;
      sum_ratio += e1 / e2;
      ++count;
    }
    double mean_ratio = sum_ratio / count;
    CHECK(mean_ratio > 16.0 * 0.7);
    CHECK(mean_ratio < 16.0 * 1.3);
  }
}

TEST_CASE("force-gradient v-shift matches the FD-Hessian oracle") {
  // quadratic-in-trace potential W(x) = (tr(Ux))^2 with analytic second
  // derivative; the FD oracle drops hess_contract
  auto sys = so3_system();
  Eigen::MatrixXd u(3, 3);
  u << 0.4, -0.9, 0.3, 1.1, 0.2, -0.5, 0.0, 0.8, -0.7;
  Potential pot;
  pot.eval = [u](const Eigen::MatrixXd& q) { double t = (u * q).trace(); return t * t; };
  pot.dW = [u](const Eigen::MatrixXd& q) {
    return (2.0 * (u * q).trace() * u.transpose()).eval();
  };
  pot.hess_contract = [u](const Eigen::MatrixXd&, const Eigen::MatrixXd& d) {
    return (2.0 * (u * d).trace() * u.transpose()).eval();
  };
  pot.label = "quadratic-trace";

  Potential fd = pot;
  fd.hess_contract = nullptr;

  std::mt19937_64 rng(32);
  for (int t = 0; t < 20; ++t) {
    Eigen::MatrixXd q = random_group_point(rng, sys.spec);
    Eigen::VectorXd analytic = force_gradient_field(pot, sys.spec, sys.metric, q);
    Eigen::VectorXd oracle = force_gradient_field(fd, sys.spec, sys.metric, q);
    CHECK((analytic - oracle).cwiseAbs().maxCoeff() < 1e-5 * (1.0 + oracle.norm()));
  }
}

TEST_CASE("reversibility") {
  auto sys = so3_system();
  auto pot = bench_potential();
  std::mt19937_64 rng(33);
  PhaseState s{random_group_point(rng, sys.spec), random_coeff(rng, 3)};

  SUBCASE("momentum-flip defect below 1e-9 for all schemes") {
    for (auto scheme : {IntegratorScheme::leapfrog(0.05, 50),
                        IntegratorScheme::omelyan(0.05, 50),
                        IntegratorScheme::force_gradient(0.05, 50)})
      CHECK(reverse_check(sys, s, scheme, pot) < 1e-9);
  }

  SUBCASE("zero steps give zero defect") {
    CHECK(reverse_check(sys, s, IntegratorScheme::leapfrog(0.05, 0), pot) == 0.0);
  }

  SUBCASE("defect grows smoothly with L") {
    double prev = 0;
    for (int steps : {10, 20, 40, 80}) {
      double d = reverse_check(sys, s, IntegratorScheme::leapfrog(0.05, steps), pot);
      CHECK(d < 1e-9);
      CHECK(d >= prev * 0.01);  // no catastrophic jump pattern
      prev = d;
    }
  }
}

TEST_CASE("volume preservation: chart Jacobian of one leapfrog step") {
  auto sys = so3_system();
  auto pot = bench_potential();
  std::mt19937_64 rng(34);
  const double h = 0.05;
  const double eps = 1e-4;
  const int d = sys.spec.dim;

  PhaseState base{random_group_point(rng, sys.spec), random_coeff(rng, 3)};
  PhaseState out0 = leapfrog_step(sys, base, h, pot);
  Eigen::MatrixXd out0_q_inv = out0.q.inverse();

  auto chart = [&](const PhaseState& s) {
    Eigen::VectorXd c(2 * d);
    Eigen::MatrixXd rel = out0_q_inv * s.q;
    c.head(d) = matrix_to_coeff(sys.spec, Eigen::MatrixXd(rel.log()));
    c.tail(d) = s.v - out0.v;
    return c;
  };

  Eigen::MatrixXd jac(2 * d, 2 * d);
  for (int i = 0; i < 2 * d; ++i) {
    PhaseState plus = base, minus = base;
    if (i < d) {
      plus.q = base.q * mexp(eps * sys.spec.generators[i]);
      minus.q = base.q * mexp(-eps * sys.spec.generators[i]);
    } else {
      plus.v(i - d) += eps;
      minus.v(i - d) -= eps;
    }
    jac.col(i) =
        (chart(leapfrog_step(sys, plus, h, pot)) - chart(leapfrog_step(sys, minus, h, pot))) /
        (2.0 * eps);
  }
  CHECK(std::abs(jac.determinant() - 1.0) < 1e-6);
}

TEST_CASE("horizontality: K-invariant potential keeps v in p") {
  auto spec = build_group(GroupFamily::SOn, 3);
  auto sys = make_system(spec, make_metric(spec, MetricFlavor::TraceForm),
                         GeodesicKind::bi_invariant());
  auto split = subgroup_split(spec, 1);
  Eigen::VectorXd mu(3);
  mu << 0.0, 0.6, 0.8;
  auto pot = vmf_sphere_lift(3, mu, 2.0);
  std::mt19937_64 rng(35);

  for (auto scheme : {IntegratorScheme::leapfrog(0.05, 0),
                      IntegratorScheme::omelyan(0.05, 0),
                      IntegratorScheme::force_gradient(0.05, 0)}) {
    PhaseState s{random_group_point(rng, spec), split.P_p * random_coeff(rng, 3)};
    for (int step = 0; step < 50; ++step) {
      s = integrator_step(sys, s, scheme, pot);
      CHECK((split.P_k * s.v).norm() <= 1e-10);
    }
  }
}
