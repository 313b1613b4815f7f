#pragma once

#include "remstab/linalg.hpp"

#include <string>
#include <tuple>
#include <vector>

namespace remstab {

/// Coordinates of an element of g in the basis {e_i}.
using AlgebraVector = Vec;
/// Coordinates of an element of g* in the dual basis.
using CoalgebraVector = Vec;

/// One nonzero structure constant: [e_i, e_j] has `value` along e_k.
struct StructureEntry {
  int i = 0;
  int j = 0;
  int k = 0;
  double value = 0.0;
};

/// Finite-dimensional real Lie algebra given by structure constants
/// c[i][j][k], meaning [e_i, e_j] = sum_k c[i][j][k] e_k.
///
/// The coadjoint convention is <ad*_lam mu, eta> = <mu, [lam, eta]>.
class LieAlgebra {
 public:
  /// Abelian algebra of dimension `dim`.
  explicit LieAlgebra(int dim, std::string name = "abelian");

  /// Builds from a flat list of entries. Only the entries given are set;
  /// antisymmetric partners must be listed explicitly. Throws
  /// ContractViolation on out-of-range indices, broken antisymmetry or a
  /// Jacobi defect above 1e-12.
  LieAlgebra(int dim, const std::vector<StructureEntry>& entries, std::string name);

  static LieAlgebra abelian(int dim) { return LieAlgebra(dim); }
  /// so(3) with [e_i, e_j] = eps_ijk e_k.
  static LieAlgebra so3();
  /// Direct sum of two algebras (block structure constants).
  static LieAlgebra direct_sum(const LieAlgebra& a, const LieAlgebra& b);

  int dim() const { return dim_; }
  const std::string& name() const { return name_; }
  double c(int i, int j, int k) const { return c_[index(i, j, k)]; }
  bool is_abelian() const;

  AlgebraVector bracket(const AlgebraVector& x, const AlgebraVector& y) const;
  /// ad*_lam mu.
  CoalgebraVector coadjoint(const AlgebraVector& lam, const CoalgebraVector& mu) const;
  /// Matrix of ad_x acting on coordinates: ad_x y = ad_matrix(x) * y.
  Mat ad_matrix(const AlgebraVector& x) const;
  /// d x d matrix L with column i equal to ad*_{e_i} mu.
  Mat coadjoint_orbit_matrix(const CoalgebraVector& mu) const;

  /// Largest |c[i][j][k] + c[j][i][k]|.
  double antisymmetry_defect() const;
  /// Largest componentwise Jacobi defect over basis triples.
  double jacobi_defect() const;

  std::vector<StructureEntry> entries() const;

 private:
  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * dim_ + j) * dim_ + k;
  }
  void require_dim(const Vec& v, const char* what) const;

  int dim_;
  std::string name_;
  std::vector<double> c_;
};

/// Orthonormal basis of g_mu = ker(lam -> ad*_lam mu). Singular values of
/// the contraction matrix below tol * sigma_max count as zero.
SubspaceBasis momentum_isotropy_algebra(const LieAlgebra& alg, const CoalgebraVector& mu,
                                        double tol = kRankTol);

/// Inner product on g from a parameter family:
///   empty                 -> identity
///   size <= dim           -> diag(params, 1, ..., 1)
///   size == dim(dim+1)/2  -> packed upper triangle, row major
/// Throws ContractViolation when the result is not SPD. Invariance under the
/// residual group is the caller's assertion for non-abelian algebras.
Mat invariant_inner_product_family(const LieAlgebra& alg, const std::vector<double>& params);

}  // namespace remstab
