#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <vector>

namespace remstab {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Error hierarchy shared by every module.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ContractViolation : Error {
  using Error::Error;
};
struct GeometryError : Error {
  using Error::Error;
};
struct ChartDomainError : GeometryError {
  using GeometryError::GeometryError;
};
struct NumericalInconsistency : Error {
  using Error::Error;
};
struct NotRelativeEquilibrium : Error {
  using Error::Error;
};

/// Relative rank tolerance for matrices built from closed-form model data.
inline constexpr double kRankTol = 1e-9;
/// Relative rank tolerance for matrices assembled from finite differences.
inline constexpr double kFdRankTol = 1e-6;
/// Principal-angle threshold (radians) for subspace equality.
inline constexpr double kAngleTol = 1e-6;

enum class Ambient { Algebra, Coalgebra, Tangent, Phase };

const char* to_string(Ambient a);

/// Ordered basis of a linear subspace, stored column-wise.
struct SubspaceBasis {
  Ambient ambient = Ambient::Algebra;
  Mat vectors;  // ambient_dim x dim
  double gram_tol = kRankTol;

  SubspaceBasis() = default;
  SubspaceBasis(Ambient a, Mat v, double tol = kRankTol)
      : ambient(a), vectors(std::move(v)), gram_tol(tol) {}

  Eigen::Index dim() const { return vectors.cols(); }
  Eigen::Index ambient_dim() const { return vectors.rows(); }
  bool empty() const { return vectors.cols() == 0; }

  /// Smallest singular value exceeds gram_tol times the largest.
  bool is_independent() const;
};

/// Orthonormal basis of the null space of `a`. Singular values below
/// max(rel_tol * sigma_max, abs_floor) count as zero.
Mat null_space(const Mat& a, double rel_tol = kRankTol, double abs_floor = 0.0);

/// Orthonormal basis of the column space of `a` under the same rule.
Mat range_basis(const Mat& a, double rel_tol = kRankTol, double abs_floor = 0.0);

/// Numerical rank.
Eigen::Index numerical_rank(const Mat& a, double rel_tol = kRankTol, double abs_floor = 0.0);

/// Orthonormal basis of span(u) ∩ span(w); inputs need not be orthonormal.
Mat intersect(const Mat& u, const Mat& w, double rel_tol = kRankTol);

/// Principal angles between column spans, ascending. Empty if either is empty.
Vec principal_angles(const Mat& u, const Mat& w);

/// True when both spans have equal dimension and all principal angles < tol.
bool same_subspace(const Mat& u, const Mat& w, double tol = kAngleTol);

/// Orthonormalize columns of `v` with respect to the SPD inner product `g`.
Mat orthonormalize(const Mat& v, const Mat& g);

/// Sorted (ascending) eigenvalues of the symmetric part of `a`.
Vec symmetric_eigenvalues(const Mat& a);

/// Symmetric part.
inline Mat sym(const Mat& a) { return 0.5 * (a + a.transpose()); }

struct Inertia {
  int positive = 0;
  int negative = 0;
  int zero = 0;
  bool operator==(const Inertia&) const = default;
};

/// Sylvester inertia of a sorted spectrum; |ev| <= tol counts as zero.
Inertia inertia_of(const Vec& eigenvalues, double tol);

/// Default band for "numerically zero" eigenvalues:
/// 1e-8 * max|ev| with floor 1e-12.
double definiteness_band(const Vec& eigenvalues, double rel = 1e-8, double floor = 1e-12);

/// Maximum absolute entry, 0 for empty matrices.
double max_abs(const Mat& a);

std::vector<double> to_std(const Vec& v);

}  // namespace remstab
