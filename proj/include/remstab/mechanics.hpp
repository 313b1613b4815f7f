#pragma once

#include "remstab/charted_system.hpp"

namespace remstab {

/// II(x) = A(x)^T M(x) A(x).
Mat locked_inertia(const ChartedSystem& sys, const Point& x);

/// Directional derivative (DII . v) along the chart line x + t v.
Mat d_locked_inertia(const ChartedSystem& sys, const Point& x, const TangentVector& v);

/// mu = II(x) xi.
CoalgebraVector momentum_of_generator(const ChartedSystem& sys, const Point& x,
                                      const AlgebraVector& xi);

/// V(x) - 1/2 xi^T II(x) xi.
double augmented_potential(const ChartedSystem& sys, const Point& x, const AlgebraVector& xi);

struct ReResidual {
  Vec gradient;     // chart gradient of V_xi
  double norm = 0;  // M(x)^{-1} norm of the gradient
  double threshold = 0;
  bool accepted() const { return norm <= threshold; }
};

/// Gradient of the augmented potential and its acceptance threshold
/// 1e-7 (1 + |V(x)|).
ReResidual re_residual(const ChartedSystem& sys, const Point& x, const AlgebraVector& xi);

/// Throws NotRelativeEquilibrium when the residual is above threshold.
void require_relative_equilibrium(const ChartedSystem& sys, const Point& x, const AlgebraVector& xi);

/// Components M(x) A(x) xi of the one-form chi^xi.
CotangentVector chi_one_form(const ChartedSystem& sys, const Point& x, const AlgebraVector& xi);

struct NewtonResult {
  Point x;
  ReResidual residual;
  int iterations = 0;
  bool converged = false;
};

/// Damped Newton iteration on the gradient of V_xi. The Hessian is taken by
/// finite differences and inverted in the least-squares sense, so the step
/// stays transverse to degenerate (orbit) directions.
NewtonResult find_relative_equilibrium(const ChartedSystem& sys, const Point& x0,
                                       const AlgebraVector& xi, int max_iterations = 50);

}  // namespace remstab
