#pragma once

#include "remstab/report.hpp"
#include "remstab/splitting.hpp"

#include <optional>
#include <string>
#include <vector>

namespace remstab {

struct QuadraticForm {
  SubspaceBasis basis;
  Mat matrix;  // symmetric
  std::string label;
  Vec eigenvalues;  // ascending
  double asymmetry = 0.0;  // of the matrix before symmetrization
  /// Expected size of finite-difference noise in the entries; eigenvalues
  /// below it are never trusted to carry a sign.
  double noise_floor = 0.0;

  QuadraticForm() = default;
  QuadraticForm(SubspaceBasis b, const Mat& m, std::string label);
  Eigen::Index dim() const { return matrix.rows(); }
  /// Band of numerically zero eigenvalues: the override when given, else
  /// 1e-8 * max|ev| with floor 1e-12, raised to noise_floor.
  double band(std::optional<double> tol = std::nullopt) const;
  Inertia inertia(std::optional<double> tol = std::nullopt) const;
  bool positive_definite(std::optional<double> tol = std::nullopt) const;
  bool negative_definite(std::optional<double> tol = std::nullopt) const;
  bool definite(std::optional<double> tol = std::nullopt) const {
    return positive_definite(tol) || negative_definite(tol);
  }
  bool nondegenerate(std::optional<double> tol = std::nullopt) const;
};

/// Chart Hessian of V_eta at x by nested central differences.
Mat augmented_hessian_chart(const ChartedSystem& sys, const Point& x, const AlgebraVector& eta);

/// corr(v_i, v_j) for the columns of `vectors`.
Mat correction_matrix(const ChartedSystem& sys, const SplittingData& split, const Mat& vectors);

QuadraticForm correction_term(const ChartedSystem& sys, const SplittingData& split);

/// (d^2 V_{xi_perp} + corr) restricted to the columns of `vectors`.
Mat restricted_hessian_matrix(const ChartedSystem& sys, const SplittingData& split, const Mat& vectors);

QuadraticForm restricted_augmented_hessian(const ChartedSystem& sys, const SplittingData& split);

StabilityReport rem_test(const ChartedSystem& sys, const SplittingData& split,
                         std::optional<double> definiteness_tol = std::nullopt);

struct ArnoldForm {
  QuadraticForm form;
  Mat raw;  // before symmetrization
  bool symmetric = true;
  bool nondegenerate = true;
};

/// Lambda(x, mu)(lambda) as an element of r.
AlgebraVector arnold_lambda(const LieAlgebra& lie, const SplittingData& split, const AlgebraVector& lam);

ArnoldForm arnold_form(const ChartedSystem& sys, const SplittingData& split,
                       std::optional<double> tol = std::nullopt);

/// Corollary route. Builds w_int on a copy of the splitting if needed.
StabilityReport block_corollary_test(const ChartedSystem& sys, const SplittingData& split,
                                     std::optional<double> definiteness_tol = std::nullopt);

/// Matrix of C(v): column j is C(v)(r_j) in the (M-orthonormal) slice basis.
Mat c_operator(const ChartedSystem& sys, const SplittingData& split, const TangentVector& v);

/// <<C(a)(xi_r), b>> computed straight from the tube derivative.
double c_pairing(const ChartedSystem& sys, const SplittingData& split, const TangentVector& a,
                 const AlgebraVector& xi_r, const TangentVector& b);

struct BlockForms {
  // Coordinates: q^mu (nq) + Sigma_int (ni) + S* (ns).
  int nq = 0, ni = 0, ns = 0;
  Mat xi_block;     // nq x nq
  Mat psi_block;    // nq x ni
  Mat s_mu_block;   // ni x ni
  Mat omega;        // assembled from the closed-form blocks
  Mat omega_chart;  // canonical form evaluated on the kappa-tilde image
  Mat hessian_blocks;  // diag(Ar, Hess|Sigma_int, S* metric)
  Mat hessian_chart;   // phase-space Hessian on the kappa-tilde image
  Mat kappa;           // 2n x (nq + ni + ns) chart phase vectors
  Mat sstar_basis;     // slice-coordinate dual basis used for S*
  double omega_antisymmetry = 0.0;
  double omega_sigma_ratio = 0.0;    // sigma_min / sigma_max
  double omega_chart_residual = 0.0; // max |omega - omega_chart|
  double offblock_max = 0.0;         // largest off-diagonal block entry of hessian_chart
  double diagonal_norm = 0.0;        // norm of the diagonal blocks
  double diagonal_residual = 0.0;    // max |diag blocks(hessian_chart) - hessian_blocks|
};

/// Requires a non-degenerate Arnold form; throws NumericalInconsistency
/// otherwise or when w_int has the wrong dimension.
BlockForms block_forms(const ChartedSystem& sys, const SplittingData& split);

/// Rebuilds Omega from d chi^{xi_perp} by finite differences and returns the
/// largest deviation from the closed-form blocks.
double omega_crosscheck(const ChartedSystem& sys, const SplittingData& split, const BlockForms& blocks);

struct OracleOptions {
  std::optional<double> definiteness_tol;
  /// Seed for a randomized complement; empty = Euclidean complement.
  std::optional<unsigned> complement_seed;
};

/// Brute-force test on the chart phase space.
StabilityReport full_em_test(const ChartedSystem& sys, const Point& x, const AlgebraVector& xi,
                             const Mat& ip, const OracleOptions& options = {});

/// Phase-space Hessian of h_eta at z = (x, M A xi).
Mat phase_hessian(const ChartedSystem& sys, const Point& x, const AlgebraVector& xi,
                  const AlgebraVector& eta);

struct IsotypicResult {
  bool applicable = true;
  std::vector<QuadraticForm> blocks;
  std::vector<double> frequencies;  // |weight| of each component
  double cross_block_max = 0.0;
  double commutator_max = 0.0;
  double invariance_residual = 0.0;
};

IsotypicResult isotypic_subblocks(const ChartedSystem& sys, const SplittingData& split,
                                  const std::vector<AlgebraVector>& residual_generators,
                                  unsigned seed = 7);

/// Relative deviation between d^2 V_mu and d^2 V_xi + corr on Sigma.
/// Empty when the action is not locally free at x.
std::optional<double> regular_case_amended_check(const ChartedSystem& sys, const SplittingData& split);

/// Both sides of one item of the covariant-derivative identities.
struct IdentitySides {
  double lhs = 0.0;
  double rhs = 0.0;
  double scale = 0.0;
  double relative_error() const;
};

// (i)   << nabla_{xi_i Q} xi_j Q, lambda_Q >> = 1/2 {(DII . xi_i^r Q)(xi_j, lambda) - II(xi_i^r, [xi_j, lambda])}
IdentitySides covariant_item_i(const ChartedSystem& sys, const SplittingData& split,
                               const AlgebraVector& xi_i, const AlgebraVector& xi_j,
                               const AlgebraVector& lam);
// (ii)  << nabla_{xi_i Q} xi_j Q, w >> = -1/2 (DII . w)(xi_i^r, xi_j)
IdentitySides covariant_item_ii(const ChartedSystem& sys, const SplittingData& split,
                                const AlgebraVector& xi_i, const AlgebraVector& xi_j,
                                const TangentVector& w);
// (iii) << nabla_{xi_Q} vbar, lambda_Q >> = 1/2 (DII . v)(xi^r, lambda)
IdentitySides covariant_item_iii(const ChartedSystem& sys, const SplittingData& split,
                                 const AlgebraVector& xi, const TangentVector& v,
                                 const AlgebraVector& lam);
// (iv)  << nabla_vbar xi_Q, lambda_Q >> = 1/2 (DII . v)(xi, lambda)
IdentitySides covariant_item_iv(const ChartedSystem& sys, const SplittingData& split,
                                const AlgebraVector& xi, const TangentVector& v,
                                const AlgebraVector& lam);
// (v)   << nabla_vbar xi_Q, w >> = << nabla_{xi_Q} vbar, w >> + << xi^h . v, w >>
IdentitySides covariant_item_v(const ChartedSystem& sys, const SplittingData& split,
                               const AlgebraVector& xi, const TangentVector& v,
                               const TangentVector& w);

}  // namespace remstab
