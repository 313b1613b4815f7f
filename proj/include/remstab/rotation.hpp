#pragma once

#include <Eigen/Dense>

// Rotation-vector chart on SO(3) near the identity.
namespace remstab::rot {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

Mat3 hat(const Vec3& u);
Vec3 vee(const Mat3& s);

/// exp of hat(phi) (Rodrigues, series near zero).
Mat3 expm(const Vec3& phi);

/// Inverse of expm on rotations with angle < pi/2; ChartDomainError beyond.
Vec3 logm(const Mat3& r);

/// Maps phi-dot to the spatial angular velocity: (d/dt R) R^T = hat(J phi-dot).
Mat3 left_jacobian(const Vec3& phi);
Mat3 left_jacobian_inverse(const Vec3& phi);

/// Rotation about e3 by angle a.
Mat3 rot_z(double a);

/// Largest admissible chart angle.
inline constexpr double kChartAngle = 1.5707963267948966;

}  // namespace remstab::rot
