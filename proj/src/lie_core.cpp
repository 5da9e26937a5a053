#include "liehmc/lie_core.hpp"

#include <cmath>
#include <stdexcept>

namespace liehmc {

namespace {

void finalize(LieGroupSpec& spec) {
  const int d = spec.dim;
  spec.gram.resize(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j <= i; ++j)
      spec.gram(i, j) = spec.gram(j, i) =
          (spec.generators[i].transpose() * spec.generators[j]).trace();
  Eigen::FullPivLU<Eigen::MatrixXd> lu(spec.gram);
  if (!lu.isInvertible())
    throw std::invalid_argument("generator basis is linearly dependent");
  spec.gram_inv = lu.inverse();
}

std::vector<Eigen::MatrixXd> antisymmetric_basis(int n) {
  // b-major: for b = 1..n-1, for a = 0..b-1, E_ab - E_ba.
  std::vector<Eigen::MatrixXd> gens;
  for (int b = 1; b < n; ++b)
    for (int a = 0; a < b; ++a) {
      Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
      m(a, b) = 1.0;
      m(b, a) = -1.0;
      gens.push_back(m);
    }
  return gens;
}

std::vector<Eigen::MatrixXd> symmetric_basis(int n, bool traceless) {
  std::vector<Eigen::MatrixXd> gens;
  for (int b = 1; b < n; ++b)
    for (int a = 0; a < b; ++a) {
      Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
      m(a, b) = 1.0;
      m(b, a) = 1.0;
      gens.push_back(m);
    }
  if (traceless) {
    // diag(E_aa - E_nn) spans the traceless diagonals
    for (int a = 0; a < n - 1; ++a) {
      Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
      m(a, a) = 1.0;
      m(n - 1, n - 1) = -1.0;
      gens.push_back(m);
    }
  } else {
    for (int a = 0; a < n; ++a) {
      Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
      m(a, a) = 1.0;
      gens.push_back(m);
    }
  }
  return gens;
}

}  // namespace

LieGroupSpec build_group(GroupFamily family, int n) {
  if (n < 2) throw std::invalid_argument("group size must be >= 2");
  LieGroupSpec spec;
  spec.family = family;
  spec.n = n;
  switch (family) {
    case GroupFamily::SOn:
      spec.generators = antisymmetric_basis(n);
      break;
    case GroupFamily::SLn: {
      spec.generators = symmetric_basis(n, /*traceless=*/true);
      auto anti = antisymmetric_basis(n);
      spec.generators.insert(spec.generators.end(), anti.begin(), anti.end());
      break;
    }
    case GroupFamily::GLPlus: {
      spec.generators = symmetric_basis(n, /*traceless=*/false);
      auto anti = antisymmetric_basis(n);
      spec.generators.insert(spec.generators.end(), anti.begin(), anti.end());
      break;
    }
  }
  spec.dim = static_cast<int>(spec.generators.size());
  finalize(spec);
  return spec;
}

Eigen::MatrixXd coeff_to_matrix(const LieGroupSpec& spec, const Eigen::VectorXd& v) {
  if (v.size() != spec.dim) throw std::invalid_argument("coefficient length mismatch");
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(spec.n, spec.n);
  for (int i = 0; i < spec.dim; ++i) m += v(i) * spec.generators[i];
  return m;
}

Eigen::VectorXd matrix_to_coeff(const LieGroupSpec& spec, const Eigen::MatrixXd& m) {
  Eigen::VectorXd rhs(spec.dim);
  for (int i = 0; i < spec.dim; ++i)
    rhs(i) = (spec.generators[i].transpose() * m).trace();
  return spec.gram_inv * rhs;
}

MembershipResult group_membership(const LieGroupSpec& spec, const Eigen::MatrixXd& q) {
  double defect = 0.0;
  switch (spec.family) {
    case GroupFamily::SOn: {
      Eigen::MatrixXd r = q.transpose() * q - Eigen::MatrixXd::Identity(spec.n, spec.n);
      defect = r.cwiseAbs().maxCoeff();
      break;
    }
    case GroupFamily::SLn:
      defect = std::abs(q.determinant() - 1.0);
      break;
    case GroupFamily::GLPlus:
      defect = -std::min(q.determinant(), 0.0);
      break;
  }
  return {defect <= spec.membership_tol, defect};
}

namespace {

MetricData from_g(const LieGroupSpec& spec, const Eigen::MatrixXd& g, MetricFlavor flavor) {
  if (g.rows() != spec.dim || g.cols() != spec.dim)
    throw std::invalid_argument("metric dimension mismatch");
  if ((g - g.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    throw std::invalid_argument("metric must be symmetric");
  Eigen::LLT<Eigen::MatrixXd> llt(g);
  if (llt.info() != Eigen::Success)
    throw std::invalid_argument("metric must be positive definite");
  MetricData md;
  md.g = g;
  md.chol = llt.matrixL();
  md.g_inv = llt.solve(Eigen::MatrixXd::Identity(spec.dim, spec.dim));
  md.flavor = flavor;
  return md;
}

}  // namespace

MetricData make_metric(const LieGroupSpec& spec, MetricFlavor flavor) {
  const int d = spec.dim;
  Eigen::MatrixXd g(d, d);
  if (flavor == MetricFlavor::TraceForm) {
    g = spec.gram;
  } else if (flavor == MetricFlavor::NegKilling) {
    // -B in the generator basis; needs TraceForm structure constants first.
    MetricData trace_metric = from_g(spec, spec.gram, MetricFlavor::TraceForm);
    StructureConstants sc = structure_constants(spec, trace_metric);
    for (int i = 0; i < d; ++i) {
      Eigen::VectorXd ei = Eigen::VectorXd::Unit(d, i);
      for (int j = 0; j <= i; ++j) {
        Eigen::VectorXd ej = Eigen::VectorXd::Unit(d, j);
        g(i, j) = g(j, i) = -killing_form(sc, ei, ej);
      }
    }
  } else {
    throw std::invalid_argument("Custom flavor requires make_custom_metric");
  }
  return from_g(spec, g, flavor);
}

MetricData make_custom_metric(const LieGroupSpec& spec, const Eigen::MatrixXd& g) {
  return from_g(spec, g, MetricFlavor::Custom);
}

StructureConstants structure_constants(const LieGroupSpec& spec, const MetricData& metric) {
  const int d = spec.dim;
  StructureConstants sc;
  sc.dim = d;
  sc.c_upper.assign(d, Eigen::MatrixXd::Zero(d, d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < i; ++j) {
      Eigen::MatrixXd comm = spec.generators[i] * spec.generators[j] -
                             spec.generators[j] * spec.generators[i];
      Eigen::VectorXd c = matrix_to_coeff(spec, comm);
      for (int k = 0; k < d; ++k) {
        sc.c_upper[k](i, j) = c(k);
        sc.c_upper[k](j, i) = -c(k);
      }
    }
  sc.c_lower.assign(d, Eigen::MatrixXd::Zero(d, d));
  for (int r = 0; r < d; ++r)
    for (int l = 0; l < d; ++l)
      if (metric.g(r, l) != 0.0) sc.c_lower[r] += metric.g(r, l) * sc.c_upper[l];
  // c_r^{lk} = g^{lj} c_{rji} g^{ik}: contract both slots of c_lower[r]
  sc.c_mixed.assign(d, Eigen::MatrixXd::Zero(d, d));
  for (int r = 0; r < d; ++r)
    sc.c_mixed[r] = metric.g_inv * sc.c_lower[r] * metric.g_inv;
  return sc;
}

Eigen::VectorXd ad(const StructureConstants& sc, const Eigen::VectorXd& u,
                   const Eigen::VectorXd& w) {
  if (u.size() != sc.dim || w.size() != sc.dim)
    throw std::invalid_argument("coefficient length mismatch");
  Eigen::VectorXd out(sc.dim);
  for (int k = 0; k < sc.dim; ++k) out(k) = u.dot(sc.c_upper[k] * w);
  return out;
}

Eigen::MatrixXd ad_matrix(const StructureConstants& sc, const Eigen::VectorXd& u) {
  Eigen::MatrixXd m(sc.dim, sc.dim);
  for (int k = 0; k < sc.dim; ++k) m.row(k) = (u.transpose() * sc.c_upper[k]);
  return m;
}

Eigen::VectorXd ad_star(const StructureConstants& sc, const MetricData& metric,
                        const Eigen::VectorXd& u, const Eigen::VectorXd& w) {
  // M_k = <w, [u, xi_k]> = w^T g (ad_u e_k); then solve g x = M.
  Eigen::MatrixXd adu = ad_matrix(sc, u);
  Eigen::VectorXd m = adu.transpose() * (metric.g * w);
  return metric.g_inv * m;
}

double killing_form(const StructureConstants& sc, const Eigen::VectorXd& u,
                    const Eigen::VectorXd& w) {
  return (ad_matrix(sc, u) * ad_matrix(sc, w)).trace();
}

namespace {

ReductiveSplit split_from_k(const LieGroupSpec& spec, const std::vector<int>& k_idx) {
  ReductiveSplit split;
  split.k_indices = k_idx;
  std::vector<bool> in_k(spec.dim, false);
  for (int i : k_idx) in_k[i] = true;
  for (int i = 0; i < spec.dim; ++i)
    if (!in_k[i]) split.p_indices.push_back(i);
  split.P_k = Eigen::MatrixXd::Zero(spec.dim, spec.dim);
  for (int i : split.k_indices) split.P_k(i, i) = 1.0;
  split.P_p = Eigen::MatrixXd::Identity(spec.dim, spec.dim) - split.P_k;
  return split;
}

}  // namespace

ReductiveSplit canonical_split(const LieGroupSpec& spec) {
  int n_anti = spec.n * (spec.n - 1) / 2;
  std::vector<int> k_idx;
  if (spec.family == GroupFamily::SOn) {
    for (int i = 0; i < spec.dim; ++i) k_idx.push_back(i);
  } else {
    for (int i = spec.dim - n_anti; i < spec.dim; ++i) k_idx.push_back(i);
  }
  return split_from_k(spec, k_idx);
}

ReductiveSplit subgroup_split(const LieGroupSpec& spec, int fixed_cols) {
  if (spec.family != GroupFamily::SOn)
    throw std::invalid_argument("subgroup_split is defined for SO(n)");
  int m = spec.n - fixed_cols;  // K = SO(m) in the leading block
  if (m < 1 || fixed_cols < 1)
    throw std::invalid_argument("invalid number of fixed columns");
  // b-major ordering puts all pairs with b < m first
  std::vector<int> k_idx;
  for (int i = 0; i < m * (m - 1) / 2; ++i) k_idx.push_back(i);
  return split_from_k(spec, k_idx);
}

}  // namespace liehmc
