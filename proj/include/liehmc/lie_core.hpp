#ifndef LIEHMC_LIE_CORE_HPP
#define LIEHMC_LIE_CORE_HPP

#include <Eigen/Dense>
#include <vector>

namespace liehmc {

enum class GroupFamily { SOn, SLn, GLPlus };

/// Matrix Lie group with a fixed, ordered generator basis of its algebra.
///
/// Generator ordering is part of the contract:
///  - SO(n): antisymmetric E_ab - E_ba, enumerated b-major
///    (for b = 1..n-1, for a = 0..b-1), so the so(n-k) subalgebra
///    occupies a contiguous leading index block.
///  - SL(n)/GL+(n): symmetric block first (off-diagonal E_ab + E_ba for
///    a < b, b-major, then diagonal), antisymmetric block last.
///    This makes the reductive split g = k (+) p index-contiguous.
struct LieGroupSpec {
  GroupFamily family;
  int n;    // matrix size
  int dim;  // algebra dimension
  std::vector<Eigen::MatrixXd> generators;
  double membership_tol = 1e-8;

  // Gram matrix tr(xi_i^T xi_j) of the generators and its inverse,
  // cached for coefficient <-> matrix conversions.
  Eigen::MatrixXd gram;
  Eigen::MatrixXd gram_inv;
};

LieGroupSpec build_group(GroupFamily family, int n);

/// Sum v^i xi_i.
Eigen::MatrixXd coeff_to_matrix(const LieGroupSpec& spec, const Eigen::VectorXd& v);

/// Coefficients of an algebra matrix in the generator basis (Gram solve).
Eigen::VectorXd matrix_to_coeff(const LieGroupSpec& spec, const Eigen::MatrixXd& m);

struct MembershipResult {
  bool ok;
  double defect;
};

/// Defect from the group: ||q^T q - I||_max for SO(n), |det q - 1| for
/// SL(n), -min(det q, 0) for GL+(n).
MembershipResult group_membership(const LieGroupSpec& spec, const Eigen::MatrixXd& q);

enum class MetricFlavor { TraceForm, NegKilling, Custom };

struct MetricData {
  Eigen::MatrixXd g;
  Eigen::MatrixXd g_inv;
  Eigen::MatrixXd chol;  // lower triangular, g = chol * chol^T
  MetricFlavor flavor;
};

MetricData make_metric(const LieGroupSpec& spec, MetricFlavor flavor);
MetricData make_custom_metric(const LieGroupSpec& spec, const Eigen::MatrixXd& g);

/// c^k_{ij} with [xi_i, xi_j] = c^k_{ij} xi_k, plus the lowered and mixed
/// contractions c_{rjk} = g_{rl} c^l_{jk} and c_r^{lk} = g^{ik} g^{lj} c_{rji}.
struct StructureConstants {
  int dim;
  std::vector<Eigen::MatrixXd> c_upper;  // c_upper[k](i,j) = c^k_{ij}
  std::vector<Eigen::MatrixXd> c_lower;  // c_lower[r](j,k) = c_{rjk}
  std::vector<Eigen::MatrixXd> c_mixed;  // c_mixed[r](l,k) = c_r^{lk}
};

StructureConstants structure_constants(const LieGroupSpec& spec, const MetricData& metric);

/// (ad_u w)^k = c^k_{ij} u^i w^j.
Eigen::VectorXd ad(const StructureConstants& sc, const Eigen::VectorXd& u,
                   const Eigen::VectorXd& w);

/// Matrix of ad_u in the generator basis: (ad_u)^k_j = c^k_{ij} u^i.
Eigen::MatrixXd ad_matrix(const StructureConstants& sc, const Eigen::VectorXd& u);

/// Metric adjoint: <ad_star(u, w), z> = <w, ad_u z> for all z.
Eigen::VectorXd ad_star(const StructureConstants& sc, const MetricData& metric,
                        const Eigen::VectorXd& u, const Eigen::VectorXd& w);

/// B(u, w) = tr(ad_u ad_w).
double killing_form(const StructureConstants& sc, const Eigen::VectorXd& u,
                    const Eigen::VectorXd& w);

/// Orthogonal decomposition g = k (+) p in coefficient space.
struct ReductiveSplit {
  std::vector<int> k_indices;
  std::vector<int> p_indices;
  Eigen::MatrixXd P_k;
  Eigen::MatrixXd P_p;
};

/// Canonical split for the generator ordering above: k = so(n)
/// (antisymmetric block), p = symmetric block. For SO(n) itself k is the
/// whole algebra and p is empty.
ReductiveSplit canonical_split(const LieGroupSpec& spec);

/// Split for the quotient SO(n)/SO(n-k): k-block are the generators of the
/// leading (n-k)x(n-k) rotation block.
ReductiveSplit subgroup_split(const LieGroupSpec& spec, int fixed_cols);

}  // namespace liehmc

#endif
