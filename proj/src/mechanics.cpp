#include "remstab/mechanics.hpp"

#include "remstab/finite_difference.hpp"

#include <cmath>
#include <sstream>

namespace remstab {

Mat locked_inertia(const ChartedSystem& sys, const Point& x) {
  const Mat a = sys.generators(x);
  if (a.rows() != sys.n || a.cols() != sys.group_dim())
    throw GeometryError(sys.name + ": generator matrix has wrong shape");
  return sym(a.transpose() * sys.checked_metric(x) * a);
}

Mat d_locked_inertia(const ChartedSystem& sys, const Point& x, const TangentVector& v) {
  const int d = sys.group_dim();
  const double nv = v.norm();
  if (nv == 0.0) return Mat::Zero(d, d);
  // Unit direction so that the chart displacement equals the step.
  const Vec u = v / nv;
  const fd::MatrixFn ii = [&](const Vec& q) -> Mat { return locked_inertia(sys, q); };
  return sym(nv * fd::directional(ii, x, u, sys.fd_step(x)));
}

CoalgebraVector momentum_of_generator(const ChartedSystem& sys, const Point& x,
                                      const AlgebraVector& xi) {
  return locked_inertia(sys, x) * xi;
}

double augmented_potential(const ChartedSystem& sys, const Point& x, const AlgebraVector& xi) {
  return sys.potential(x) - 0.5 * xi.dot(locked_inertia(sys, x) * xi);
}

ReResidual re_residual(const ChartedSystem& sys, const Point& x, const AlgebraVector& xi) {
  const fd::ScalarFn vxi = [&](const Vec& q) { return augmented_potential(sys, q, xi); };
  ReResidual r;
  r.gradient = fd::gradient(vxi, x, sys.fd_step(x));
  const Mat m = sys.checked_metric(x);
  r.norm = std::sqrt(std::max(0.0, r.gradient.dot(m.llt().solve(r.gradient))));
  r.threshold = 1e-7 * (1.0 + std::abs(sys.potential(x)));
  return r;
}

void require_relative_equilibrium(const ChartedSystem& sys, const Point& x, const AlgebraVector& xi) {
  const ReResidual r = re_residual(sys, x, xi);
  if (!r.accepted()) {
    std::ostringstream os;
    os << sys.name << ": not a relative equilibrium (gradient norm " << r.norm << " > "
       << r.threshold << ")";
    throw NotRelativeEquilibrium(os.str());
  }
}

CotangentVector chi_one_form(const ChartedSystem& sys, const Point& x, const AlgebraVector& xi) {
  return sys.checked_metric(x) * (sys.generators(x) * xi);
}

NewtonResult find_relative_equilibrium(const ChartedSystem& sys, const Point& x0,
                                       const AlgebraVector& xi, int max_iterations) {
  NewtonResult out;
  out.x = x0;
  out.residual = re_residual(sys, out.x, xi);
  const fd::ScalarFn vxi = [&](const Vec& q) { return augmented_potential(sys, q, xi); };
  while (!out.residual.accepted() && out.iterations < max_iterations) {
    ++out.iterations;
    const Mat hess = fd::hessian(vxi, out.x, sys.fd_step2(out.x));
    const Vec step = -hess.completeOrthogonalDecomposition().solve(out.residual.gradient);
    double damping = 1.0;
    bool improved = false;
    for (int k = 0; k < 30; ++k, damping *= 0.5) {
      const Point trial = out.x + damping * step;
      try {
        const ReResidual r = re_residual(sys, trial, xi);
        if (r.norm < out.residual.norm) {
          out.x = trial;
          out.residual = r;
          improved = true;
          break;
        }
      } catch (const ChartDomainError&) {
        // shrink and retry
      }
    }
    if (!improved) break;
  }
  out.converged = out.residual.accepted();
  return out;
}

}  // namespace remstab
