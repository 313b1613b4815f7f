#include "remstab/catalog.hpp"

#include "remstab/rotation.hpp"

#include <cmath>
#include <random>
#include <set>
#include <sstream>

namespace remstab {

namespace {

using rot::Mat3;
using rot::Vec3;

void require_positive(const std::string& model, const std::string& name, double v) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    std::ostringstream os;
    os << model << ": parameter " << name << " must be positive and finite (got " << v << ")";
    throw ContractViolation(os.str());
  }
}

Vec3 chart_point(const Point& q) {
  Vec3 phi = q.head<3>();
  if (!(phi.norm() < rot::kChartAngle)) throw ChartDomainError("rotation chart: angle beyond pi/2");
  return phi;
}

}  // namespace

CatalogEntry lagrange_top(double i, double i3, double m, double g, double l, double zeta) {
  const std::string id = "lagrange_top";
  for (auto [name, v] : {std::pair{"i", i}, {"i3", i3}, {"m", m}, {"g", g}, {"l", l}})
    require_positive(id, name, v);

  CatalogEntry e;
  e.id = id;
  ChartedSystem& s = e.system;
  s.name = id;
  s.n = 3;
  s.lie = LieAlgebra::abelian(2);
  s.parameters = {{"i", i}, {"i3", i3}, {"m", m}, {"g", g}, {"l", l}, {"zeta", zeta}};
  const Mat3 body = Vec3(i, i, i3).asDiagonal();
  const double mgl = m * g * l;

  s.metric = [body](const Point& q) -> Mat {
    const Vec3 phi = chart_point(q);
    const Mat3 r = rot::expm(phi);
    const Mat3 j = rot::left_jacobian(phi);
    return j.transpose() * r * body * r.transpose() * j;
  };
  s.potential = [mgl](const Point& q) -> double { return mgl * rot::expm(chart_point(q))(2, 2); };
  s.generators = [](const Point& q) -> Mat {
    const Vec3 phi = chart_point(q);
    const Mat3 jinv = rot::left_jacobian_inverse(phi);
    const Vec3 e3 = Vec3::UnitZ();
    Mat a(3, 2);
    a.col(0) = jinv * e3;
    a.col(1) = -jinv * (rot::expm(phi) * e3);
    return a;
  };
  s.action_flow = [](const AlgebraVector& lam, double t, const Point& q) -> Point {
    const Mat3 r = rot::expm(chart_point(q));
    const Mat3 moved = rot::rot_z(t * lam(0)) * r * rot::rot_z(-t * lam(1));
    return Vec(rot::logm(moved));
  };

  e.known_re.push_back({Vec::Zero(3), (Vec(2) << zeta, 0.0).finished(),
                        "sleeping top at the identity"});
  AnalyticData a;
  a.variable = "zeta^2";
  a.threshold = [=](const std::vector<double>& ip) {
    const double k = ip.empty() ? 1.0 : ip[0];
    return (1.0 + k) * (1.0 + k) * mgl / (k * i3 + i3 - i);
  };
  a.optimal_ip = (2.0 * i - i3) / i3;
  a.optimal_threshold = 4.0 * mgl * i / (i3 * i3);
  e.analytic = a;
  if (i3 > 2.0 * i) e.warnings.push_back("i3 > 2 i violates the rigid-body triangle inequality");
  return e;
}

CatalogEntry spherical_pendulum(double m, double g, double l, double theta0, double omega) {
  const std::string id = "spherical_pendulum";
  for (auto [name, v] : {std::pair{"m", m}, {"g", g}, {"l", l}}) require_positive(id, name, v);
  if (!std::isfinite(theta0) || theta0 < 0.0)
    throw ContractViolation(id + ": theta0 must be a finite non-negative angle");
  if (theta0 >= M_PI) throw ChartDomainError(id + ": the upright point lies outside the chart");
  if (theta0 > 0.0 && theta0 >= M_PI / 2)
    throw ContractViolation(id + ": conical relative equilibria need theta0 < pi/2");

  CatalogEntry e;
  e.id = id;
  ChartedSystem& s = e.system;
  s.name = id;
  s.n = 2;
  s.lie = LieAlgebra::abelian(1);
  s.parameters = {{"m", m}, {"g", g}, {"l", l}, {"theta0", theta0}, {"omega", omega}};
  const double ml2 = m * l * l;
  const double mgl = m * g * l;
  auto guard = [](const Point& q) {
    if (!q.allFinite() || q.squaredNorm() > 1e12)
      throw ChartDomainError("spherical_pendulum: point at the upright pole");
  };
  s.metric = [=](const Point& q) -> Mat {
    guard(q);
    const double f = 1.0 + q.squaredNorm();
    return (4.0 * ml2 / (f * f)) * Mat::Identity(2, 2);
  };
  s.potential = [=](const Point& q) -> double {
    guard(q);
    const double r2 = q.squaredNorm();
    return mgl * (r2 - 1.0) / (r2 + 1.0);
  };
  s.generators = [](const Point& q) -> Mat {
    Mat a(2, 1);
    a << -q(1), q(0);
    return a;
  };
  s.action_flow = [](const AlgebraVector& lam, double t, const Point& q) -> Point {
    const double c = std::cos(t * lam(0)), sn = std::sin(t * lam(0));
    return (Vec(2) << c * q(0) - sn * q(1), sn * q(0) + c * q(1)).finished();
  };

  if (theta0 == 0.0) {
    e.known_re.push_back({Vec::Zero(2), (Vec(1) << omega).finished(), "hanging equilibrium"});
  } else {
    const double w = std::sqrt(g / (l * std::cos(theta0)));
    e.known_re.push_back({(Vec(2) << std::tan(theta0 / 2.0), 0.0).finished(),
                          (Vec(1) << w).finished(), "conical pendulum"});
  }
  return e;
}

CatalogEntry rigid_body(const RigidBodyParams& p) {
  const std::string id = "rigid_body";
  for (int k = 0; k < 3; ++k) require_positive(id, "I" + std::to_string(k + 1), p.inertia(k));
  if (p.axis < 0 || p.axis > 2) throw ContractViolation(id + ": axis must be 0, 1 or 2");
  if (p.shape) {
    require_positive(id, "kappa", p.kappa);
    require_positive(id, "ms", p.ms);
    const int o1 = (p.axis + 1) % 3, o2 = (p.axis + 2) % 3;
    // coupling(k) sits opposite to index k; the ones touching the axis are o1 and o2
    if ((p.coupling(o1) != 0.0 || p.coupling(o2) != 0.0) && p.d(p.axis) != 0.0)
      throw ContractViolation(id + ": axis coupling needs d[axis] = 0");
  }

  CatalogEntry e;
  e.id = id;
  ChartedSystem& s = e.system;
  s.name = id;
  s.n = p.shape ? 4 : 3;
  s.lie = LieAlgebra::so3();
  s.parameters = {{"I1", p.inertia(0)}, {"I2", p.inertia(1)}, {"I3", p.inertia(2)},
                  {"axis", p.axis},     {"omega", p.omega},    {"shape", p.shape ? 1.0 : 0.0}};
  if (p.shape) {
    s.parameters["d1"] = p.d(0);
    s.parameters["d2"] = p.d(1);
    s.parameters["d3"] = p.d(2);
    s.parameters["c23"] = p.coupling(0);
    s.parameters["c13"] = p.coupling(1);
    s.parameters["c12"] = p.coupling(2);
    s.parameters["kappa"] = p.kappa;
    s.parameters["ms"] = p.ms;
  }
  const int n = s.n;
  auto body = [p](const Point& q) -> Mat3 {
    Mat3 in = p.inertia.asDiagonal();
    if (p.shape) {
      Mat3 dm = p.d.asDiagonal();
      dm(1, 2) = dm(2, 1) = p.coupling(0);
      dm(0, 2) = dm(2, 0) = p.coupling(1);
      dm(0, 1) = dm(1, 0) = p.coupling(2);
      in += q(3) * dm;
    }
    if (Eigen::SelfAdjointEigenSolver<Mat3>(in).eigenvalues().minCoeff() <= 0.0)
      throw ChartDomainError("rigid_body: inertia lost positivity");
    return in;
  };
  s.metric = [=](const Point& q) -> Mat {
    const Vec3 phi = chart_point(q);
    const Mat3 r = rot::expm(phi);
    const Mat3 j = rot::left_jacobian(phi);
    Mat m = Mat::Zero(n, n);
    m.topLeftCorner(3, 3) = j.transpose() * r * body(q) * r.transpose() * j;
    if (n == 4) m(3, 3) = p.ms;
    return m;
  };
  s.potential = [=](const Point& q) -> double {
    chart_point(q);
    return n == 4 ? 0.5 * p.kappa * q(3) * q(3) : 0.0;
  };
  s.generators = [=](const Point& q) -> Mat {
    Mat a = Mat::Zero(n, 3);
    a.topRows(3) = rot::left_jacobian_inverse(chart_point(q));
    return a;
  };
  s.action_flow = [](const AlgebraVector& lam, double t, const Point& q) -> Point {
    Point out = q;
    const Mat3 moved = rot::expm(t * Vec3(lam)) * rot::expm(chart_point(q));
    out.head<3>() = rot::logm(moved);
    return out;
  };

  Vec x = Vec::Zero(n);
  if (p.shape) {
    x(3) = p.omega * p.omega * p.d(p.axis) / (2.0 * p.kappa);
    body(x);
  }
  e.known_re.push_back({x, p.omega * Vec::Unit(3, p.axis), "steady rotation about a principal axis"});
  // The action is free, so the residual group at x is trivial.
  return e;
}

CatalogEntry synthetic_product(const SyntheticParams& p) {
  const std::string id = "synthetic_product";
  if (p.planes < 0 || p.extra < 0 || p.planes + p.extra == 0)
    throw ContractViolation(id + ": need at least one coordinate");
  const int d = static_cast<int>(p.weights.size());
  for (const auto& w : p.weights)
    if (static_cast<int>(w.size()) != p.planes) throw ContractViolation(id + ": weight row size");
  auto sized = [&](const std::vector<double>& v, int want, const char* what) {
    if (static_cast<int>(v.size()) != want) {
      std::ostringstream os;
      os << id << ": " << what << " needs " << want << " entries";
      throw ContractViolation(os.str());
    }
  };
  sized(p.plane_mass, p.planes, "plane_mass");
  sized(p.extra_mass, p.extra, "extra_mass");
  sized(p.a, p.planes, "a");
  sized(p.b, p.planes, "b");
  sized(p.c, p.extra, "c");
  for (double v : p.plane_mass) require_positive(id, "plane mass", v);
  for (double v : p.extra_mass) require_positive(id, "extra mass", v);

  const int n = 2 * p.planes + p.extra;
  CatalogEntry e;
  e.id = id;
  ChartedSystem& s = e.system;
  s.name = id;
  s.n = n;
  s.lie = LieAlgebra::abelian(d);
  Mat mass = Mat::Zero(n, n);
  for (int k = 0; k < p.planes; ++k) mass(2 * k, 2 * k) = mass(2 * k + 1, 2 * k + 1) = p.plane_mass[k];
  for (int k = 0; k < p.extra; ++k) mass(2 * p.planes + k, 2 * p.planes + k) = p.extra_mass[k];

  s.metric = [mass](const Point&) -> Mat { return mass; };
  s.potential = [p](const Point& q) -> double {
    double v = 0.0;
    for (int k = 0; k < p.planes; ++k) {
      const double rho = q(2 * k) * q(2 * k) + q(2 * k + 1) * q(2 * k + 1);
      v += p.a[k] * rho + p.b[k] * rho * rho;
    }
    for (int k = 0; k < p.extra; ++k) v += p.c[k] * q(2 * p.planes + k) * q(2 * p.planes + k);
    return v;
  };
  s.generators = [p, n, d](const Point& q) -> Mat {
    Mat a = Mat::Zero(n, d);
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < p.planes; ++k) {
        a(2 * k, j) = -p.weights[j][k] * q(2 * k + 1);
        a(2 * k + 1, j) = p.weights[j][k] * q(2 * k);
      }
    return a;
  };
  s.action_flow = [p, d](const AlgebraVector& lam, double t, const Point& q) -> Point {
    Point out = q;
    for (int k = 0; k < p.planes; ++k) {
      double w = 0.0;
      for (int j = 0; j < d; ++j) w += lam(j) * p.weights[j][k];
      const double c = std::cos(t * w), sn = std::sin(t * w);
      out(2 * k) = c * q(2 * k) - sn * q(2 * k + 1);
      out(2 * k + 1) = sn * q(2 * k) + c * q(2 * k + 1);
    }
    return out;
  };

  const Vec x = p.x.size() == 0 ? Vec::Zero(n) : p.x;
  const Vec xi = p.xi.size() == 0 ? Vec::Zero(d) : p.xi;
  if (x.size() != n || xi.size() != d) throw ContractViolation(id + ": x or xi has wrong size");
  e.known_re.push_back({x, xi, "synthetic configuration"});
  return e;
}

SyntheticParams random_synthetic_params(unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> planes(1, 3), extra(0, 2), dim(1, 2), weight(-2, 2);
  std::uniform_real_distribution<double> pos(0.5, 2.0), sym(-1.0, 1.0);
  SyntheticParams p;
  p.planes = planes(rng);
  p.extra = extra(rng);
  const int d = dim(rng);
  p.weights.assign(d, std::vector<int>(p.planes, 0));
  for (auto& row : p.weights)
    for (auto& w : row) w = weight(rng);
  for (int k = 0; k < p.planes; ++k) {
    p.plane_mass.push_back(pos(rng));
    p.a.push_back(pos(rng));
    p.b.push_back(pos(rng));
  }
  for (int k = 0; k < p.extra; ++k) {
    p.extra_mass.push_back(pos(rng));
    p.c.push_back(pos(rng));
  }
  p.xi = Vec(d);
  for (int j = 0; j < d; ++j) p.xi(j) = sym(rng);
  return p;
}

SyntheticParams place_on_relative_equilibrium(SyntheticParams p, const std::vector<int>& occupied) {
  const int n = 2 * p.planes + p.extra;
  const int d = static_cast<int>(p.weights.size());
  if (p.xi.size() == 0) p.xi = Vec::Zero(d);
  p.x = Vec::Zero(n);
  for (int k : occupied) {
    if (k < 0 || k >= p.planes) throw ContractViolation("synthetic_product: occupied plane index");
    double w = 0.0;
    for (int j = 0; j < d; ++j) w += p.xi(j) * p.weights[j][k];
    // d/d rho of V_xi on the plane: a - m w^2 / 2 + 2 b rho = 0
    const double rho = (0.5 * p.plane_mass[k] * w * w - p.a[k]) / (2.0 * p.b[k]);
    if (!(rho > 0.0) || !std::isfinite(rho))
      throw ContractViolation("synthetic_product: plane has no relative-equilibrium circle");
    p.x(2 * k) = std::sqrt(rho);
  }
  return p;
}

namespace {

class ParamReader {
 public:
  ParamReader(std::string model, const ParamMap& params) : model_(std::move(model)), params_(params) {}
  double get(const std::string& key, double fallback) {
    used_.insert(key);
    auto it = params_.find(key);
    return it == params_.end() ? fallback : it->second;
  }
  bool has(const std::string& key) const { return params_.count(key) != 0; }
  int get_int(const std::string& key, int fallback) {
    const double v = get(key, fallback);
    if (v != std::floor(v)) throw ContractViolation(model_ + ": parameter " + key + " must be an integer");
    return static_cast<int>(v);
  }
  void finish() const {
    for (const auto& [k, v] : params_)
      if (!used_.count(k)) throw ContractViolation(model_ + ": unknown parameter '" + k + "'");
  }

 private:
  std::string model_;
  const ParamMap& params_;
  std::set<std::string> used_;
};

}  // namespace

CatalogEntry build_model(const std::string& id, const ParamMap& params) {
  ParamReader r(id, params);
  if (id == "lagrange_top") {
    const double i = r.get("i", 1.0), i3 = r.get("i3", 1.5), m = r.get("m", 1.0),
                 g = r.get("g", 1.0), l = r.get("l", 1.0), zeta = r.get("zeta", 2.0);
    r.finish();
    return lagrange_top(i, i3, m, g, l, zeta);
  }
  if (id == "spherical_pendulum") {
    const double m = r.get("m", 1.0), g = r.get("g", 1.0), l = r.get("l", 1.0),
                 th = r.get("theta0", M_PI / 4), om = r.get("omega", 0.0);
    r.finish();
    return spherical_pendulum(m, g, l, th, om);
  }
  if (id == "rigid_body") {
    RigidBodyParams p;
    p.inertia = Vec3(r.get("I1", 1.0), r.get("I2", 2.0), r.get("I3", 3.0));
    p.axis = r.get_int("axis", 2);
    p.omega = r.get("omega", 1.0);
    p.shape = r.get_int("shape", 0) != 0;
    p.d = Vec3(r.get("d1", 0.0), r.get("d2", 0.0), r.get("d3", 0.0));
    p.coupling = Vec3(r.get("c23", 0.0), r.get("c13", 0.0), r.get("c12", 0.0));
    p.kappa = r.get("kappa", 1.0);
    p.ms = r.get("ms", 1.0);
    r.finish();
    return rigid_body(p);
  }
  if (id == "synthetic_product") {
    SyntheticParams p;
    if (r.has("seed")) {
      p = random_synthetic_params(static_cast<unsigned>(r.get_int("seed", 0)));
    } else {
      p.planes = r.get_int("planes", 1);
      p.extra = r.get_int("extra", 0);
      const int d = r.get_int("dim", 1);
      if (p.planes < 0 || p.extra < 0 || d < 0 || p.planes > 64 || p.extra > 64 || d > 64)
        throw ContractViolation(id + ": planes, extra and dim must be in [0, 64]");
      p.weights.assign(d, std::vector<int>(p.planes, 0));
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < p.planes; ++k)
          p.weights[j][k] = r.get_int("w" + std::to_string(j) + "_" + std::to_string(k), j == k ? 1 : 0);
      for (int k = 0; k < p.planes; ++k) {
        p.plane_mass.push_back(r.get("m" + std::to_string(k), 1.0));
        p.a.push_back(r.get("a" + std::to_string(k), 1.0));
        p.b.push_back(r.get("b" + std::to_string(k), 1.0));
      }
      for (int k = 0; k < p.extra; ++k) {
        p.extra_mass.push_back(r.get("my" + std::to_string(k), 1.0));
        p.c.push_back(r.get("c" + std::to_string(k), 1.0));
      }
      p.xi = Vec::Zero(d);
    }
    const int d = static_cast<int>(p.weights.size());
    for (int j = 0; j < d; ++j) p.xi(j) = r.get("xi" + std::to_string(j), p.xi(j));
    std::vector<int> occupied;
    for (int k = 0; k < p.planes; ++k)
      if (r.get_int("occ" + std::to_string(k), 0) != 0) occupied.push_back(k);
    r.finish();
    return synthetic_product(place_on_relative_equilibrium(p, occupied));
  }
  throw ContractViolation("unknown model id '" + id + "'");
}

std::vector<std::string> catalog_ids() {
  return {"lagrange_top", "spherical_pendulum", "rigid_body", "synthetic_product"};
}

}  // namespace remstab
