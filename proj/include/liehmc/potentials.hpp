#ifndef LIEHMC_POTENTIALS_HPP
#define LIEHMC_POTENTIALS_HPP

#include <Eigen/Dense>
#include <functional>
#include <string>

#include "liehmc/lie_core.hpp"

namespace liehmc {

/// Target potential V on the group, defined through an ambient extension
/// W on matrices. `dW` is the matrix derivative dW/dx at q. The optional
/// `hess_contract(q, d)` is the directional derivative of dW at q along d;
/// when absent, second derivatives fall back to central differences.
/// User-supplied callables must be reentrant.
struct Potential {
  std::function<double(const Eigen::MatrixXd&)> eval;
  std::function<Eigen::MatrixXd(const Eigen::MatrixXd&)> dW;
  std::function<Eigen::MatrixXd(const Eigen::MatrixXd&, const Eigen::MatrixXd&)>
      hess_contract;  // may be empty
  std::string label;
};

Potential constant_potential(double value = 0.0);

/// W(x) = beta * tr(U x) for a constant real matrix U.
Potential gauge_potential(const Eigen::MatrixXd& u, double beta);

/// von Mises-Fisher lift to SO(n): V(q) = -kappa * mu^T (q e_n) with e_n
/// the last basis column, so V is invariant under right multiplication by
/// K = SO(n-1) embedded in the leading block.
Potential vmf_sphere_lift(int n, const Eigen::VectorXd& mu, double kappa);

/// Lowered left derivatives b_j = e_j(V)(q) = tr(dW(q)^T q xi_j).
Eigen::VectorXd left_derivative_lowered(const Potential& pot, const LieGroupSpec& spec,
                                        const Eigen::MatrixXd& q);

/// Raised force coefficients f^i = g^{ij} e_j(V)(q); the quantity
/// subtracted (times t) by the potential flow.
Eigen::VectorXd left_derivative(const Potential& pot, const LieGroupSpec& spec,
                                const MetricData& metric, const Eigen::MatrixXd& q);

/// e_j(e_s(V))(q); analytic when hess_contract is supplied, central
/// difference along q e^{+-eps xi_j} otherwise.
double second_left_derivative(const Potential& pot, const LieGroupSpec& spec,
                              const Eigen::MatrixXd& q, int j, int s);

/// Coefficients of the Hamiltonian field of {V,{V,T}}:
/// X^k = -2 g^{jk} g^{ls} e_l(V) e_j e_s(V).
Eigen::VectorXd force_gradient_field(const Potential& pot, const LieGroupSpec& spec,
                                     const MetricData& metric, const Eigen::MatrixXd& q);

}  // namespace liehmc

#endif
