#include "liehmc/integrators.hpp"

#include <stdexcept>

namespace liehmc {

namespace {

void check_finite(const PhaseState& s) {
  if (!s.q.allFinite() || !s.v.allFinite())
    throw std::runtime_error("integration failure: non-finite state");
}

}  // namespace

PhaseState leapfrog_step(const GroupSystem& sys, const PhaseState& s, double h,
                         const Potential& pot) {
  PhaseState cur = potential_flow(sys, s, 0.5 * h, pot);
  cur = geodesic_flow(sys, cur, h);
  cur = potential_flow(sys, cur, 0.5 * h, pot);
  check_finite(cur);
  return cur;
}

PhaseState omelyan_step(const GroupSystem& sys, const PhaseState& s, double h,
                        double lambda, const Potential& pot) {
  if (!(lambda > 0.0 && lambda < 0.5))
    throw std::invalid_argument("omelyan lambda must lie in (0, 1/2)");
  PhaseState cur = geodesic_flow(sys, s, lambda * h);
  cur = potential_flow(sys, cur, 0.5 * h, pot);
  cur = geodesic_flow(sys, cur, (1.0 - 2.0 * lambda) * h);
  cur = potential_flow(sys, cur, 0.5 * h, pot);
  cur = geodesic_flow(sys, cur, lambda * h);
  check_finite(cur);
  return cur;
}

PhaseState force_gradient_step(const GroupSystem& sys, const PhaseState& s, double h,
                               const Potential& pot) {
  PhaseState cur = potential_flow(sys, s, h / 6.0, pot);
  cur = geodesic_flow(sys, cur, 0.5 * h);
  // middle stage: combined vertical shift of X_V and X_{{V,{V,T}}}
  cur.v -= (2.0 * h / 3.0) * left_derivative(pot, sys.spec, sys.metric, cur.q);
  cur.v -= (h * h * h / 72.0) * force_gradient_field(pot, sys.spec, sys.metric, cur.q);
  cur = geodesic_flow(sys, cur, 0.5 * h);
  cur = potential_flow(sys, cur, h / 6.0, pot);
  check_finite(cur);
  return cur;
}

PhaseState integrator_step(const GroupSystem& sys, const PhaseState& s,
                           const IntegratorScheme& scheme, const Potential& pot) {
  switch (scheme.kind) {
    case IntegratorScheme::Leapfrog:
      return leapfrog_step(sys, s, scheme.step_size, pot);
    case IntegratorScheme::Omelyan:
      return omelyan_step(sys, s, scheme.step_size, scheme.lambda, pot);
    case IntegratorScheme::ForceGradient:
      return force_gradient_step(sys, s, scheme.step_size, pot);
  }
  throw std::logic_error("unreachable");
}

double reverse_check(const GroupSystem& sys, const PhaseState& s,
                     const IntegratorScheme& scheme, const Potential& pot) {
  PhaseState cur = s;
  for (int i = 0; i < scheme.n_steps; ++i) cur = integrator_step(sys, cur, scheme, pot);
  cur.v = -cur.v;
  for (int i = 0; i < scheme.n_steps; ++i) cur = integrator_step(sys, cur, scheme, pot);
  cur.v = -cur.v;
  double dq = (cur.q - s.q).cwiseAbs().maxCoeff();
  double dv = (cur.v - s.v).cwiseAbs().maxCoeff();
  return std::max(dq, dv);
}

}  // namespace liehmc
