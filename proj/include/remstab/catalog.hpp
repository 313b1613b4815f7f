#pragma once

#include "remstab/charted_system.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace remstab {

using ParamMap = std::map<std::string, double>;

struct KnownRelativeEquilibrium {
  Point x;
  AlgebraVector xi;
  std::string description;
};

/// Closed-form stability data where the model has one. `threshold` maps the
/// inner-product parameters to the critical value of `variable`.
struct AnalyticData {
  std::string variable;  // e.g. "zeta^2"
  std::function<double(const std::vector<double>&)> threshold;
  std::optional<double> optimal_ip;
  std::optional<double> optimal_threshold;
};

struct CatalogEntry {
  std::string id;
  ChartedSystem system;
  std::vector<KnownRelativeEquilibrium> known_re;
  std::optional<AnalyticData> analytic;
  bool residual_group_abelian = true;
  bool gmu_compact = true;
  std::vector<std::string> warnings;
};

/// Heavy symmetric top. Params: i, i3, m, g, l, zeta (spin of the sleeping
/// relative equilibrium at the identity, velocity (zeta, 0)).
CatalogEntry lagrange_top(double i, double i3, double m, double g, double l, double zeta = 2.0);

/// Spherical pendulum in a stereographic chart centred at the hanging point.
/// `theta0` is the cone angle measured from the downward vertical; at
/// theta0 = 0 the velocity is `omega`.
CatalogEntry spherical_pendulum(double m, double g, double l, double theta0, double omega = 0.0);

/// Free rigid body on SO(3) with left multiplication, spinning about `axis`
/// with rate `omega`. With `shape` set, one extra coordinate s stretches the
/// inertia by s*(diag(d) + off-diagonal `coupling` = (c23, c13, c12)) and
/// carries stiffness kappa and mass ms. A coupling touching the spin axis
/// requires d[axis] = 0 so that the spinning state stays relative.
struct RigidBodyParams {
  Eigen::Vector3d inertia{1.0, 2.0, 3.0};
  int axis = 2;
  double omega = 1.0;
  bool shape = false;
  Eigen::Vector3d d{0.0, 0.0, 0.0};
  Eigen::Vector3d coupling{0.0, 0.0, 0.0};
  double kappa = 1.0;
  double ms = 1.0;
};
CatalogEntry rigid_body(const RigidBodyParams& p);

/// Flat R^n with a torus T^d rotating coordinate planes with integer weights,
/// potential sum_p (a_p rho_p + b_p rho_p^2) + sum_i c_i y_i^2.
struct SyntheticParams {
  int planes = 2;
  int extra = 0;  // coordinates not moved by the action
  std::vector<std::vector<int>> weights;  // weights[j][p]
  std::vector<double> plane_mass;        // per plane
  std::vector<double> extra_mass;        // per extra coordinate
  std::vector<double> a, b, c;
  Vec x;   // base point (size 2*planes + extra); empty -> origin
  Vec xi;  // velocity; empty -> zero
};
CatalogEntry synthetic_product(const SyntheticParams& p);

/// Randomized well-posed synthetic model (origin relative equilibrium).
SyntheticParams random_synthetic_params(unsigned seed);

/// Moves occupied planes onto the circle where x is a relative equilibrium
/// for p.xi. Throws ContractViolation when no such radius exists.
SyntheticParams place_on_relative_equilibrium(SyntheticParams p, const std::vector<int>& occupied);

/// Builds a model from a flat parameter map; unknown ids or parameters
/// throw ContractViolation.
CatalogEntry build_model(const std::string& id, const ParamMap& params);

/// Catalog ids understood by build_model.
std::vector<std::string> catalog_ids();

}  // namespace remstab
