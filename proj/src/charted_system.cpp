#include "remstab/charted_system.hpp"

#include "remstab/finite_difference.hpp"

#include <cmath>
#include <sstream>

namespace remstab {

double ChartedSystem::fd_step(const Point& q) const {
  if (fd_step_override) return *fd_step_override;
  return 1e-5 * (1.0 + q.norm());
}

double ChartedSystem::fd_step2(const Point& q) const {
  if (fd_step_override) return 10.0 * *fd_step_override;
  return 1e-4 * (1.0 + q.norm());
}

Mat ChartedSystem::checked_metric(const Point& q) const {
  if (q.size() != n) throw ContractViolation(name + ": point has wrong dimension");
  Mat m = metric(q);
  if (m.rows() != n || m.cols() != n) throw GeometryError(name + ": metric has wrong shape");
  if (!m.allFinite()) throw GeometryError(name + ": metric is not finite");
  const double scale = 1.0 + max_abs(m);
  if (max_abs(m - m.transpose()) > 1e-12 * scale)
    throw GeometryError(name + ": metric is not symmetric");
  Eigen::LLT<Mat> llt(m);
  if (llt.info() != Eigen::Success) throw GeometryError(name + ": metric is not positive definite");
  return m;
}

Point ChartedSystem::flow(const AlgebraVector& lam, double t, const Point& q) const {
  if (lam.size() != group_dim()) throw ContractViolation(name + ": flow generator has wrong length");
  if (action_flow) return action_flow(lam, t, q);
  return integrated_flow(lam, t, q);
}

Point ChartedSystem::integrated_flow(const AlgebraVector& lam, double t, const Point& q) const {
  constexpr int steps = 1000;
  const double dt = t / steps;
  Point y = q;
  if (t == 0.0) return y;
  auto f = [&](const Point& p) -> Vec { return generators(p) * lam; };
  for (int s = 0; s < steps; ++s) {
    const Vec k1 = f(y);
    const Vec k2 = f(y + 0.5 * dt * k1);
    const Vec k3 = f(y + 0.5 * dt * k2);
    const Vec k4 = f(y + dt * k3);
    y += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return y;
}

Vec Christoffel::contract(const Vec& u, const Vec& w) const {
  Vec out = Vec::Zero(n_);
  for (int i = 0; i < n_; ++i) {
    if (u(i) == 0.0) continue;
    for (int j = 0; j < n_; ++j) {
      const double uw = u(i) * w(j);
      if (uw == 0.0) continue;
      for (int k = 0; k < n_; ++k) out(k) += (*this)(i, j, k) * uw;
    }
  }
  return out;
}

double Christoffel::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

Christoffel christoffel(const ChartedSystem& sys, const Point& q) {
  const int n = sys.n;
  const Mat minv = sys.checked_metric(q).inverse();
  const double h = sys.fd_step(q);
  std::vector<Mat> dm(n);  // dm[l] = d M / d q_l
  for (int l = 0; l < n; ++l) dm[l] = fd::directional(sys.metric, q, Vec::Unit(n, l), h);

  Christoffel g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        double s = 0.0;
        for (int l = 0; l < n; ++l) s += minv(k, l) * (dm[i](l, j) + dm[j](l, i) - dm[l](i, j));
        g(i, j, k) = g(j, i, k) = 0.5 * s;
      }
  return g;
}

TangentVector covariant_derivative_along(const ChartedSystem& sys,
                                         const std::function<Point(double)>& curve,
                                         const std::function<TangentVector(double)>& field,
                                         double t0) {
  const Point c0 = curve(t0);
  const double h = sys.fd_step(c0);
  const Vec cdot = fd::derivative(curve, t0, h);
  const Vec wdot = fd::derivative(field, t0, h);
  return wdot + christoffel(sys, c0).contract(cdot, field(t0));
}

TangentVector covariant_derivative_of_field(const ChartedSystem& sys, const Point& x,
                                            const std::function<TangentVector(const Point&)>& field,
                                            const TangentVector& v) {
  const double h = sys.fd_step(x);
  const fd::MatrixFn as_mat = [&](const Vec& q) -> Mat { return field(q); };
  const Vec dw = fd::directional(as_mat, x, v, h).col(0);
  return dw + christoffel(sys, x).contract(v, field(x));
}

TangentVector flow_mixed_partial(const ChartedSystem& sys, const Point& x, const TangentVector& v,
                                 const AlgebraVector& lam, bool integrated) {
  if (v.norm() == 0.0 || lam.norm() == 0.0) return Vec::Zero(sys.n);
  const double h2 = sys.fd_step2(x);
  const double hs = h2 / v.norm();
  const double ht = h2 / lam.norm();
  auto g = [&](double s, double t) -> Vec {
    const Point q = x + s * v;
    return integrated ? sys.integrated_flow(lam, t, q) : sys.flow(lam, t, q);
  };
  return fd::mixed_partial(g, hs, ht);
}

TangentVector tube_extension_derivative(const ChartedSystem& sys, const Point& x,
                                        const TangentVector& v, const AlgebraVector& xi_r,
                                        bool integrated_flow) {
  const Mat m = sys.checked_metric(x);
  const Mat a = sys.generators(x);
  const double orth = (a.transpose() * m * v).norm();
  const double scale = a.norm() * m.norm() * v.norm();
  if (orth > 1e-8 * scale + 1e-300) {
    std::ostringstream os;
    os << "tube_extension_derivative: vector is not in the slice (residual " << orth / scale << ")";
    throw ContractViolation(os.str());
  }
  if (v.norm() == 0.0 || xi_r.norm() == 0.0) return Vec::Zero(sys.n);
  // Along c(t) = exp(t xi_r).x the extension is the pushforward of v.
  const Vec wdot = flow_mixed_partial(sys, x, v, xi_r, integrated_flow);
  return wdot + christoffel(sys, x).contract(a * xi_r, v);
}

Mat linearized_isotropy_action(const ChartedSystem& sys, const Point& x, const AlgebraVector& zeta) {
  Mat out(sys.n, sys.n);
  for (int j = 0; j < sys.n; ++j) out.col(j) = flow_mixed_partial(sys, x, Vec::Unit(sys.n, j), zeta);
  return out;
}

}  // namespace remstab
