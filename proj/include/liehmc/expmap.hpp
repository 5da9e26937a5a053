#ifndef LIEHMC_EXPMAP_HPP
#define LIEHMC_EXPMAP_HPP

#include <Eigen/Dense>

#include "liehmc/lie_core.hpp"

namespace liehmc {

/// ScalingSquaring is the near-machine-precision reference. Cayley and
/// diagonal Pade approximants map antisymmetric inputs into SO(n) exactly
/// up to roundoff (quadratic group with J = I).
struct ExpMethod {
  enum Kind { ScalingSquaring, Cayley, PadeDiagonal } kind = ScalingSquaring;
  int pade_order = 2;  // only for PadeDiagonal

  static ExpMethod scaling_squaring() { return {ScalingSquaring, 0}; }
  static ExpMethod cayley() { return {Cayley, 1}; }
  static ExpMethod pade(int order) { return {PadeDiagonal, order}; }
};

/// Approximation of e^Z. Throws on a singular Cayley/Pade denominator.
Eigen::MatrixXd mexp(const Eigen::MatrixXd& z, const ExpMethod& method = {});

/// Nearest-group-element projection: polar orthogonalization for SO(n),
/// determinant renormalization for SL(n), identity for GL+(n).
/// Refuses inputs with membership defect above 1e-3 (integrator blow-up).
Eigen::MatrixXd retract(const LieGroupSpec& spec, const Eigen::MatrixXd& q);

}  // namespace liehmc

#endif
