#include "remstab/rotation.hpp"

#include "remstab/linalg.hpp"

#include <cmath>

namespace remstab::rot {

Mat3 hat(const Vec3& u) {
  Mat3 s;
  s << 0.0, -u(2), u(1), u(2), 0.0, -u(0), -u(1), u(0), 0.0;
  return s;
}

Vec3 vee(const Mat3& s) { return Vec3(s(2, 1), s(0, 2), s(1, 0)); }

Mat3 expm(const Vec3& phi) {
  const double th2 = phi.squaredNorm();
  const double th = std::sqrt(th2);
  double a, b;  // sin(th)/th, (1 - cos(th))/th^2
  if (th < 1e-3) {
    a = 1.0 - th2 / 6.0 + th2 * th2 / 120.0;
    b = 0.5 - th2 / 24.0 + th2 * th2 / 720.0;
  } else {
    a = std::sin(th) / th;
    b = (1.0 - std::cos(th)) / th2;
  }
  const Mat3 p = hat(phi);
  return Mat3::Identity() + a * p + b * p * p;
}

Vec3 logm(const Mat3& r) {
  const Vec3 w = 0.5 * vee(r - r.transpose());  // sin(th) * axis
  const double c = 0.5 * (r.trace() - 1.0);
  const double s = w.norm();
  const double th = std::atan2(s, c);
  if (!(th < kChartAngle)) throw ChartDomainError("rotation chart: angle beyond pi/2");
  const double f = th < 1e-4 ? 1.0 + th * th / 6.0 : th / std::sin(th);
  return f * w;
}

Mat3 left_jacobian(const Vec3& phi) {
  const double th2 = phi.squaredNorm();
  const double th = std::sqrt(th2);
  double b, c;  // (1 - cos)/th^2, (th - sin)/th^3
  if (th < 1e-3) {
    b = 0.5 - th2 / 24.0 + th2 * th2 / 720.0;
    c = 1.0 / 6.0 - th2 / 120.0 + th2 * th2 / 5040.0;
  } else {
    b = (1.0 - std::cos(th)) / th2;
    c = (th - std::sin(th)) / (th2 * th);
  }
  const Mat3 p = hat(phi);
  return Mat3::Identity() + b * p + c * p * p;
}

Mat3 left_jacobian_inverse(const Vec3& phi) {
  const double th2 = phi.squaredNorm();
  const double th = std::sqrt(th2);
  double e;
  if (th < 1e-3)
    e = 1.0 / 12.0 + th2 / 720.0 + th2 * th2 / 30240.0;
  else
    e = 1.0 / th2 - (1.0 + std::cos(th)) / (2.0 * th * std::sin(th));
  const Mat3 p = hat(phi);
  return Mat3::Identity() - 0.5 * p + e * p * p;
}

Mat3 rot_z(double a) {
  Mat3 r;
  r << std::cos(a), -std::sin(a), 0.0, std::sin(a), std::cos(a), 0.0, 0.0, 0.0, 1.0;
  return r;
}

}  // namespace remstab::rot
