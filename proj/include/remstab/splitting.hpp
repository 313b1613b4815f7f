#pragma once

#include "remstab/mechanics.hpp"

#include <optional>
#include <string>
#include <vector>

namespace remstab {

struct SplittingOptions {
  /// When set, the initial complement of h + p is perturbed by random
  /// components along h + p before the II-orthogonalization step.
  std::optional<unsigned> complement_seed;
  /// Skip the relative-equilibrium checks (residual and xi in g_mu); the
  /// xi_perp of such a splitting has no meaning. Used for off-equilibrium
  /// geometry checks.
  bool require_re = true;
};

/// Every subspace needed at a relative equilibrium. Algebra bases are stored
/// column-wise in g; tangent bases in T_xQ.
struct SplittingData {
  Point x;
  AlgebraVector xi;
  CoalgebraVector mu;
  Mat inner_product;

  Mat metric;       // M(x)
  Mat generators;   // A(x)
  Mat inertia;      // II(x)

  SubspaceBasis h, gmu, gpx, p, t, r;
  AlgebraVector xi_perp;
  SubspaceBasis slice;  // M-orthonormal
  SubspaceBasis qmu;
  SubspaceBasis sigma, sigma_rig, sigma_int;

  /// w_int in coordinates of the sigma basis (columns), and the split
  /// into its q^mu part (lambda) and slice part (b).
  Mat wint_coords;
  Mat wint_lambda;
  Mat wint_b;
  bool wint_built = false;

  /// Inverse of [h r]; rows dim h.. give r-coordinates.
  Mat hr_inverse;

  int dim_check = 0;  // n - d + dim h
  double xi_in_gmu_residual = 0.0;
  double ip_invariance_defect = 0.0;
  std::vector<std::string> assumptions;

  int n() const { return static_cast<int>(metric.rows()); }
  int d() const { return static_cast<int>(inertia.rows()); }
  /// r-coordinates (in the r basis) of an algebra vector under g = h + r.
  Vec r_coords(const AlgebraVector& v) const;
  /// h-coordinates (in the h basis).
  Vec h_coords(const AlgebraVector& v) const;
  /// r-component of v as an algebra vector.
  AlgebraVector r_part(const AlgebraVector& v) const { return r.vectors * r_coords(v); }
  AlgebraVector h_part(const AlgebraVector& v) const { return h.vectors * h_coords(v); }
  /// Restricted locked inertia on the r basis.
  Mat inertia_r() const { return r.vectors.transpose() * inertia * r.vectors; }
};

SplittingData build_splitting(const ChartedSystem& sys, const Point& x, const AlgebraVector& xi,
                              const Mat& ip, const SplittingOptions& options = {});

/// Matrix whose column i is (DII . sigma_i)(xi_perp) for the sigma basis.
Mat dii_xi_perp_on_sigma(const ChartedSystem& sys, const SplittingData& split);

/// Solves the t-annihilation condition defining w_int and fills
/// wint_* and sigma_int in `split`.
void build_wint(const ChartedSystem& sys, SplittingData& split);

/// Largest h-pairing of (DII . v)(xi_perp) over the sigma basis, relative to
/// the largest t-pairing scale. Zero in exact arithmetic.
double h_pairing_defect(const ChartedSystem& sys, const SplittingData& split);

struct SigmaDecompositionReport {
  bool applicable = false;
  bool direct_sum = false;
  int dim_rig = 0;
  int dim_int = 0;
  int dim_sigma = 0;
  Vec principal_angles;
};

/// Checks Sigma = Sigma_rig + Sigma_int (direct) when the Arnold form is
/// non-degenerate; otherwise reports not applicable.
SigmaDecompositionReport check_sigma_decomposition(const SplittingData& split,
                                                   bool arnold_nondegenerate);

}  // namespace remstab
