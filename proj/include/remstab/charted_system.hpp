#pragma once

#include "remstab/lie_algebra.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>

namespace remstab {

using Point = Vec;
using TangentVector = Vec;
using CotangentVector = Vec;

/// A simple mechanical system written in one chart around the point of
/// interest. All callables must be pure; they may throw ChartDomainError
/// outside the chart.
struct ChartedSystem {
  std::string name;
  int n = 0;  // chart dimension of Q
  LieAlgebra lie{0};
  /// Kinetic-energy metric M(q), symmetric positive definite.
  std::function<Mat(const Point&)> metric;
  /// Potential energy V(q).
  std::function<double(const Point&)> potential;
  /// n x d matrix whose column i is (e_i)_Q(q).
  std::function<Mat(const Point&)> generators;
  /// Chart image of exp(t lam) . q. Optional; when empty the flow is
  /// integrated with RK4 from the generators.
  std::function<Point(const AlgebraVector&, double, const Point&)> action_flow;
  /// Absolute finite-difference step; default scales with 1 + |q|.
  std::optional<double> fd_step_override;
  std::map<std::string, double> parameters;

  int group_dim() const { return lie.dim(); }

  /// First-derivative step: 1e-5 (1 + |q|) unless overridden.
  double fd_step(const Point& q) const;
  /// Step for nested second derivatives: 1e-4 (1 + |q|), or 10x the override.
  double fd_step2(const Point& q) const;

  /// M(q) after symmetry / positivity checks (GeometryError otherwise).
  Mat checked_metric(const Point& q) const;
  /// exp(t lam) . q, using action_flow when present.
  Point flow(const AlgebraVector& lam, double t, const Point& q) const;
  /// RK4 integration of q' = A(q) lam with 1000 fixed steps.
  Point integrated_flow(const AlgebraVector& lam, double t, const Point& q) const;
};

/// Christoffel symbols of the second kind, G(i, j, k) = Gamma^k_{ij}.
class Christoffel {
 public:
  explicit Christoffel(int n) : n_(n), data_(static_cast<std::size_t>(n) * n * n, 0.0) {}
  double& operator()(int i, int j, int k) { return data_[(i * n_ + j) * n_ + k]; }
  double operator()(int i, int j, int k) const { return data_[(i * n_ + j) * n_ + k]; }
  int n() const { return n_; }
  /// Gamma(u, w)^k = sum_ij Gamma^k_ij u^i w^j.
  Vec contract(const Vec& u, const Vec& w) const;
  double max_abs() const;

 private:
  int n_;
  std::vector<double> data_;
};

Christoffel christoffel(const ChartedSystem& sys, const Point& q);

/// D/Dt of a vector field w(t) along the curve c(t) at t0.
TangentVector covariant_derivative_along(const ChartedSystem& sys,
                                         const std::function<Point(double)>& curve,
                                         const std::function<TangentVector(double)>& field,
                                         double t0);

/// Covariant derivative at x of the vector field q -> field(q) along v.
TangentVector covariant_derivative_of_field(const ChartedSystem& sys, const Point& x,
                                            const std::function<TangentVector(const Point&)>& field,
                                            const TangentVector& v);

/// Derivative at t = 0 of s -> T_x Phi_{exp(t lam)} applied to v, taken as
/// the mixed partial d^2/(ds dt) flow(lam, t, x + s v). For lam in the
/// isotropy algebra of x this is the linearized action lam . v.
TangentVector flow_mixed_partial(const ChartedSystem& sys, const Point& x, const TangentVector& v,
                                 const AlgebraVector& lam, bool integrated = false);

/// nabla_{xi_Q} vbar(x) for the tube-adapted extension of a slice vector v.
/// `xi_r` must have no isotropy component. Throws ContractViolation when v
/// is not metric-orthogonal to the orbit directions (relative tol 1e-8).
TangentVector tube_extension_derivative(const ChartedSystem& sys, const Point& x,
                                        const TangentVector& v, const AlgebraVector& xi_r,
                                        bool integrated_flow = false);

/// Linearized action of an isotropy element on T_xQ, as an n x n matrix.
Mat linearized_isotropy_action(const ChartedSystem& sys, const Point& x, const AlgebraVector& zeta);

}  // namespace remstab
