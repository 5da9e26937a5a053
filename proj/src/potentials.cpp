#include "liehmc/potentials.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "liehmc/expmap.hpp"

namespace liehmc {

Potential constant_potential(double value) {
  Potential p;
  p.eval = [value](const Eigen::MatrixXd&) { return value; };
  p.dW = [](const Eigen::MatrixXd& q) {
    return Eigen::MatrixXd::Zero(q.rows(), q.cols()).eval();
  };
  p.hess_contract = [](const Eigen::MatrixXd& q, const Eigen::MatrixXd&) {
    return Eigen::MatrixXd::Zero(q.rows(), q.cols()).eval();
  };
  p.label = "constant";
  return p;
}

Potential gauge_potential(const Eigen::MatrixXd& u, double beta) {
  Potential p;
  p.eval = [u, beta](const Eigen::MatrixXd& q) { return beta * (u * q).trace(); };
  Eigen::MatrixXd d = beta * u.transpose();
  p.dW = [d](const Eigen::MatrixXd&) { return d; };
  p.hess_contract = [](const Eigen::MatrixXd& q, const Eigen::MatrixXd&) {
    return Eigen::MatrixXd::Zero(q.rows(), q.cols()).eval();
  };
  p.label = "gauge";
  return p;
}

Potential vmf_sphere_lift(int n, const Eigen::VectorXd& mu, double kappa) {
  if (mu.size() != n) throw std::invalid_argument("vmf: mu must have length n");
  if (std::abs(mu.norm() - 1.0) > 1e-10)
    throw std::invalid_argument("vmf: mu must be a unit vector");
  if (kappa < 0) throw std::invalid_argument("vmf: kappa must be nonnegative");
  // -kappa mu^T x e_n = tr(U x) with U = -kappa e_n mu^T
  Eigen::MatrixXd u = Eigen::MatrixXd::Zero(n, n);
  u.row(n - 1) = -kappa * mu.transpose();
  Potential p = gauge_potential(u, 1.0);
  p.label = "vmf";
  return p;
}

Eigen::VectorXd left_derivative_lowered(const Potential& pot, const LieGroupSpec& spec,
                                        const Eigen::MatrixXd& q) {
  Eigen::MatrixXd a = pot.dW(q).transpose() * q;
  Eigen::VectorXd b(spec.dim);
  for (int j = 0; j < spec.dim; ++j) b(j) = (a * spec.generators[j]).trace();
  return b;
}

Eigen::VectorXd left_derivative(const Potential& pot, const LieGroupSpec& spec,
                                const MetricData& metric, const Eigen::MatrixXd& q) {
  return metric.g_inv * left_derivative_lowered(pot, spec, q);
}

namespace {

double fd_epsilon(const Eigen::MatrixXd& q) {
  return std::cbrt(std::numeric_limits<double>::epsilon()) * (1.0 + q.norm());
}

}  // namespace

double second_left_derivative(const Potential& pot, const LieGroupSpec& spec,
                              const Eigen::MatrixXd& q, int j, int s) {
  if (pot.hess_contract) {
    // d/de [ tr(dW(q e^{e xi_j})^T q e^{e xi_j} xi_s) ] at e = 0
    Eigen::MatrixXd dir = q * spec.generators[j];
    Eigen::MatrixXd h = pot.hess_contract(q, dir);
    return (h.transpose() * q * spec.generators[s]).trace() +
           (pot.dW(q).transpose() * q * spec.generators[j] * spec.generators[s]).trace();
  }
  const double eps = fd_epsilon(q);
  Eigen::MatrixXd step = mexp(eps * spec.generators[j]);
  Eigen::MatrixXd qp = q * step;
  Eigen::MatrixXd qm = q * mexp(-eps * spec.generators[j]);
  double fp = (pot.dW(qp).transpose() * qp * spec.generators[s]).trace();
  double fm = (pot.dW(qm).transpose() * qm * spec.generators[s]).trace();
  return (fp - fm) / (2.0 * eps);
}

Eigen::VectorXd force_gradient_field(const Potential& pot, const LieGroupSpec& spec,
                                     const MetricData& metric, const Eigen::MatrixXd& q) {
  const int d = spec.dim;
  Eigen::VectorXd b = left_derivative_lowered(pot, spec, q);
  Eigen::MatrixXd h(d, d);  // h(j, s) = e_j e_s (V)(q)
  for (int j = 0; j < d; ++j)
    for (int s = 0; s < d; ++s) h(j, s) = second_left_derivative(pot, spec, q, j, s);
  // X^k = -2 g^{jk} h_{js} g^{sl} b_l
  return -2.0 * metric.g_inv * (h * (metric.g_inv * b));
}

}  // namespace liehmc
