#include "liehmc/expmap.hpp"

#include <cmath>
#include <stdexcept>
#include <unsupported/Eigen/MatrixFunctions>

namespace liehmc {

namespace {

Eigen::MatrixXd cayley(const Eigen::MatrixXd& z) {
  const int n = static_cast<int>(z.rows());
  Eigen::MatrixXd denom = Eigen::MatrixXd::Identity(n, n) - 0.5 * z;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(denom);
  if (!lu.isInvertible())
    throw std::runtime_error("Cayley transform singular (eigenvalue 2 of Z); reduce step");
  return lu.solve(Eigen::MatrixXd::Identity(n, n) + 0.5 * z);
}

// Diagonal (m,m) Pade approximant N(Z) D(Z)^{-1} with D(Z) = N(-Z).
Eigen::MatrixXd pade_diag(const Eigen::MatrixXd& z, int m) {
  if (m < 1) throw std::invalid_argument("Pade order must be >= 1");
  const int n = static_cast<int>(z.rows());
  Eigen::MatrixXd num = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd den = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd zp = Eigen::MatrixXd::Identity(n, n);
  double c = 1.0;
  for (int j = 1; j <= m; ++j) {
    c *= static_cast<double>(m - j + 1) / static_cast<double>(j * (2 * m - j + 1));
    zp = zp * z;
    num += c * zp;
    den += ((j % 2 == 0) ? c : -c) * zp;
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(den);
  if (!lu.isInvertible()) throw std::runtime_error("Pade denominator singular; reduce step");
  return lu.solve(num);
}

}  // namespace

Eigen::MatrixXd mexp(const Eigen::MatrixXd& z, const ExpMethod& method) {
  switch (method.kind) {
    case ExpMethod::ScalingSquaring:
      return z.exp();
    case ExpMethod::Cayley:
      return cayley(z);
    case ExpMethod::PadeDiagonal:
      return pade_diag(z, method.pade_order);
  }
  throw std::logic_error("unreachable");
}

Eigen::MatrixXd retract(const LieGroupSpec& spec, const Eigen::MatrixXd& q) {
  auto mem = group_membership(spec, q);
  if (mem.defect > 1e-3)
    throw std::runtime_error("retract: defect too large, integrator blow-up");
  switch (spec.family) {
    case GroupFamily::SOn: {
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(q, Eigen::ComputeFullU | Eigen::ComputeFullV);
      Eigen::MatrixXd r = svd.matrixU() * svd.matrixV().transpose();
      if (r.determinant() < 0) {
        Eigen::MatrixXd u = svd.matrixU();
        u.col(spec.n - 1) *= -1.0;
        r = u * svd.matrixV().transpose();
      }
      return r;
    }
    case GroupFamily::SLn:
      return q * std::pow(q.determinant(), -1.0 / spec.n);
    case GroupFamily::GLPlus:
      return q;
  }
  throw std::logic_error("unreachable");
}

}  // namespace liehmc
