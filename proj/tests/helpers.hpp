#pragma once

#include "remstab/catalog.hpp"

#include <random>

namespace remstab::testing {

inline Vec random_vec(std::mt19937& rng, Eigen::Index n, double scale = 1.0) {
  std::normal_distribution<double> nd(0.0, scale);
  Vec v(n);
  for (auto& x : v) x = nd(rng);
  return v;
}

inline Mat random_mat(std::mt19937& rng, Eigen::Index r, Eigen::Index c) {
  std::normal_distribution<double> nd;
  Mat m(r, c);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = nd(rng);
  return m;
}

// Spinning body whose shape coordinate couples into the off-axis inertia,
// so that Sigma_int carries a rigid component.
inline CatalogEntry coupled_rigid_body(int axis = 2, double omega = 1.3) {
  RigidBodyParams p;
  p.axis = axis;
  p.omega = omega;
  p.shape = true;
  p.d = Eigen::Vector3d(0.3, 0.2, 0.25);
  p.d(axis) = 0.0;
  p.coupling = Eigen::Vector3d(0.2, 0.3, 0.1);
  p.kappa = 2.0;
  return rigid_body(p);
}

// Torus T^2 on R^7 with two occupied planes and one idle coordinate.
inline CatalogEntry occupied_synthetic(double xi0 = 2.0, double xi1 = 0.7) {
  ParamMap pm{{"planes", 3}, {"extra", 1}, {"dim", 2},  {"w0_0", 1},  {"w0_1", 2},
              {"w0_2", 1},   {"w1_0", 0},  {"w1_1", 1}, {"w1_2", -1}, {"xi0", xi0},
              {"xi1", xi1},  {"occ0", 1},  {"occ1", 1}, {"a0", 0.5},  {"m1", 1.3}};
  return build_model("synthetic_product", pm);
}

}  // namespace remstab::testing
