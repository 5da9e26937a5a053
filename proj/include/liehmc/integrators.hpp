#ifndef LIEHMC_INTEGRATORS_HPP
#define LIEHMC_INTEGRATORS_HPP

#include "liehmc/flows.hpp"

namespace liehmc {

/// Palindromic compositions of the exact sub-flows. All stage sequences
/// are applied right-to-left (the first factor written acts last).
struct IntegratorScheme {
  enum Kind { Leapfrog, Omelyan, ForceGradient } kind = Leapfrog;
  double step_size = 0.1;
  int n_steps = 10;
  double lambda = 0.1931833;  // Omelyan minimum-norm value

  static IntegratorScheme leapfrog(double h, int steps) {
    return {Leapfrog, h, steps, 0.0};
  }
  static IntegratorScheme omelyan(double h, int steps, double lam = 0.1931833) {
    return {Omelyan, h, steps, lam};
  }
  static IntegratorScheme force_gradient(double h, int steps) {
    return {ForceGradient, h, steps, 0.0};
  }
};

/// V(h/2) T(h) V(h/2).
PhaseState leapfrog_step(const GroupSystem& sys, const PhaseState& s, double h,
                         const Potential& pot);

/// T(lambda h) V(h/2) T((1-2 lambda) h) V(h/2) T(lambda h).
PhaseState omelyan_step(const GroupSystem& sys, const PhaseState& s, double h,
                        double lambda, const Potential& pot);

/// V(h/6) T(h/2) [V(2h/3) + (h^3/72) X_{{V,{V,T}}}] T(h/2) V(h/6); the
/// middle stage is a single v-shift since both fields are vertical and
/// depend only on q.
PhaseState force_gradient_step(const GroupSystem& sys, const PhaseState& s, double h,
                               const Potential& pot);

PhaseState integrator_step(const GroupSystem& sys, const PhaseState& s,
                           const IntegratorScheme& scheme, const Potential& pot);

/// Momentum-flip round trip: integrate n_steps, negate v, integrate
/// n_steps, negate v; returns the max entrywise distance to the start.
double reverse_check(const GroupSystem& sys, const PhaseState& s,
                     const IntegratorScheme& scheme, const Potential& pot);

}  // namespace liehmc

#endif
