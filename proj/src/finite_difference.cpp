#include "remstab/finite_difference.hpp"

namespace remstab::fd {

namespace {

template <class T>
T richardson(const T& fine, const T& coarse) {
  return (4.0 * fine - coarse) / 3.0;
}

}  // namespace

Vec derivative(const CurveFn& f, double t0, double h) {
  auto central = [&](double s) -> Vec { return (f(t0 + s) - f(t0 - s)) / (2.0 * s); };
  return richardson<Vec>(central(h), central(2.0 * h));
}

Mat directional(const MatrixFn& f, const Vec& x, const Vec& v, double h) {
  auto central = [&](double s) -> Mat { return (f(x + s * v) - f(x - s * v)) / (2.0 * s); };
  return richardson<Mat>(central(h), central(2.0 * h));
}

Vec gradient(const ScalarFn& f, const Vec& x, double h) {
  const Eigen::Index n = x.size();
  Vec g(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    auto central = [&](double s) {
      Vec xp = x, xm = x;
      xp(i) += s;
      xm(i) -= s;
      return (f(xp) - f(xm)) / (2.0 * s);
    };
    g(i) = richardson(central(h), central(2.0 * h));
  }
  return g;
}

Mat jacobian(const VectorFn& f, const Vec& x, double h) {
  const Eigen::Index n = x.size();
  Mat jac;
  for (Eigen::Index i = 0; i < n; ++i) {
    auto central = [&](double s) -> Vec {
      Vec xp = x, xm = x;
      xp(i) += s;
      xm(i) -= s;
      return (f(xp) - f(xm)) / (2.0 * s);
    };
    Vec col = richardson<Vec>(central(h), central(2.0 * h));
    if (i == 0) jac.resize(col.size(), n);
    jac.col(i) = col;
  }
  return jac;
}

Mat hessian(const ScalarFn& f, const Vec& x, double h) {
  const Eigen::Index n = x.size();
  auto stencil = [&](double s) -> Mat {
    Mat hm(n, n);
    const double f0 = f(x);
    for (Eigen::Index i = 0; i < n; ++i) {
      Vec xp = x, xm = x;
      xp(i) += s;
      xm(i) -= s;
      hm(i, i) = (f(xp) - 2.0 * f0 + f(xm)) / (s * s);
      for (Eigen::Index j = 0; j < i; ++j) {
        Vec pp = x, pm = x, mp = x, mm = x;
        pp(i) += s, pp(j) += s;
        pm(i) += s, pm(j) -= s;
        mp(i) -= s, mp(j) += s;
        mm(i) -= s, mm(j) -= s;
        hm(i, j) = hm(j, i) = (f(pp) - f(pm) - f(mp) + f(mm)) / (4.0 * s * s);
      }
    }
    return hm;
  };
  return sym(richardson<Mat>(stencil(h), stencil(2.0 * h)));
}

Vec mixed_partial(const std::function<Vec(double, double)>& g, double hs, double ht) {
  auto stencil = [&](double a, double b) -> Vec {
    return (g(a, b) - g(a, -b) - g(-a, b) + g(-a, -b)) / (4.0 * a * b);
  };
  return richardson<Vec>(stencil(hs, ht), stencil(2.0 * hs, 2.0 * ht));
}

}  // namespace remstab::fd
