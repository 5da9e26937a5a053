#ifndef LIEHMC_FLOWS_HPP
#define LIEHMC_FLOWS_HPP

#include <Eigen/Dense>

#include "liehmc/expmap.hpp"
#include "liehmc/lie_core.hpp"
#include "liehmc/potentials.hpp"

namespace liehmc {

/// Point of the trivialized phase space: group matrix q and algebra
/// coefficient vector v in the left trivialization (body frame).
struct PhaseState {
  Eigen::MatrixXd q;
  Eigen::VectorXd v;
};

struct GeodesicKind {
  enum Kind { BiInvariant, ReductiveMatrix, NumericEulerArnold } kind = BiInvariant;
  int substeps = 100;  // only for NumericEulerArnold

  static GeodesicKind bi_invariant() { return {BiInvariant, 0}; }
  static GeodesicKind reductive_matrix() { return {ReductiveMatrix, 0}; }
  static GeodesicKind numeric(int substeps) { return {NumericEulerArnold, substeps}; }
};

/// Everything the flows and integrators need about one group + metric.
/// Immutable after construction; safe to share across threads.
struct GroupSystem {
  LieGroupSpec spec;
  MetricData metric;
  StructureConstants sc;
  ReductiveSplit split;  // canonical sym/antisym split
  GeodesicKind geodesic;
  ExpMethod exp_method;
};

/// Builds the system and verifies the geodesic-kind prerequisite on random
/// probes: ad* = -ad for BiInvariant, ad*_S A = [S,A] for ReductiveMatrix.
GroupSystem make_system(const LieGroupSpec& spec, const MetricData& metric,
                        GeodesicKind geodesic, ExpMethod exp_method = {});

double kinetic_energy(const GroupSystem& sys, const Eigen::VectorXd& v);
double hamiltonian(const GroupSystem& sys, const Potential& pot, const PhaseState& s);

/// Exact flow of the potential field: q unchanged,
/// v^k <- v^k - t g^{jk} e_j(V)(q).
PhaseState potential_flow(const GroupSystem& sys, const PhaseState& s, double t,
                          const Potential& pot);

/// Kinetic flow for an ad-invariant metric: (q e^{t v}, v).
PhaseState geodesic_flow_biinvariant(const GroupSystem& sys, const PhaseState& s, double t);

/// Closed-form kinetic flow for the trace metric on GL+(n)/SL(n):
/// q(t) = q e^{(v_p - v_k) t} e^{2 v_k t},  v(t) = v_k + Ad_{e^{-2 v_k t}} v_p.
PhaseState geodesic_flow_reductive_matrix(const GroupSystem& sys, const PhaseState& s,
                                          double t);

/// Numeric oracle: classical RK4 on the Euler-Arnold equation
/// vdot = ad*_v v with per-substep reconstruction q <- q e^{h v_mid}.
PhaseState geodesic_flow_numeric(const GroupSystem& sys, const PhaseState& s, double t,
                                 int substeps);

/// Dispatch on sys.geodesic.
PhaseState geodesic_flow(const GroupSystem& sys, const PhaseState& s, double t);

/// ad*_v v, the Euler-Arnold right-hand side.
Eigen::VectorXd euler_arnold_rhs(const GroupSystem& sys, const Eigen::VectorXd& v);

}  // namespace liehmc

#endif
