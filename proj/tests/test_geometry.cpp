#include "remstab/charted_system.hpp"
#include "remstab/mechanics.hpp"

#include "helpers.hpp"

#include <doctest.h>

#include <cmath>

using namespace remstab;

namespace {

// Flat plane in polar coordinates (r, theta), rotations about the origin.
ChartedSystem polar_plane() {
  ChartedSystem s;
  s.name = "polar";
  s.n = 2;
  s.lie = LieAlgebra::abelian(1);
  s.metric = [](const Point& q) -> Mat { return (Vec(2) << 1.0, q(0) * q(0)).finished().asDiagonal(); };
  s.potential = [](const Point& q) { return q(0) * q(0); };
  s.generators = [](const Point&) -> Mat { return (Mat(2, 1) << 0.0, 1.0).finished(); };
  return s;
}

}  // namespace

TEST_SUITE("charted_geometry") {

TEST_CASE("Christoffel symbols of polar coordinates") {
  const ChartedSystem s = polar_plane();
  const Point q = (Vec(2) << 1.7, 0.4).finished();
  const Christoffel g = christoffel(s, q);
  CHECK(g(1, 1, 0) == doctest::Approx(-1.7).epsilon(1e-8));      // Gamma^r_{theta theta}
  CHECK(g(0, 1, 1) == doctest::Approx(1.0 / 1.7).epsilon(1e-8));  // Gamma^theta_{r theta}
  CHECK(g(1, 0, 1) == doctest::Approx(1.0 / 1.7).epsilon(1e-8));
  CHECK(std::abs(g(0, 0, 0)) < 1e-9);
}

TEST_CASE("covariant derivative along a circle is centripetal") {
  const ChartedSystem s = polar_plane();
  const double r = 2.0;
  // unit-speed circle: theta' = 1/r; D/dt of its velocity points inward with size 1/r
  auto curve = [&](double t) -> Point { return (Vec(2) << r, t / r).finished(); };
  auto vel = [&](double) -> Vec { return (Vec(2) << 0.0, 1.0 / r).finished(); };
  const Vec acc = covariant_derivative_along(s, curve, vel, 0.3);
  CHECK(acc(0) == doctest::Approx(-1.0 / r).epsilon(1e-8));
  CHECK(std::abs(acc(1)) < 1e-9);
}

TEST_CASE("metric checks") {
  ChartedSystem s = polar_plane();
  s.metric = [](const Point&) -> Mat { return (Mat(2, 2) << 1.0, 0.5, 0.0, 1.0).finished(); };
  CHECK_THROWS_AS(s.checked_metric(Vec::Ones(2)), GeometryError);
  s.metric = [](const Point&) -> Mat { return (Mat(2, 2) << 1.0, 0.0, 0.0, -1.0).finished(); };
  CHECK_THROWS_AS(s.checked_metric(Vec::Ones(2)), GeometryError);
  CHECK_THROWS_AS(s.checked_metric(Vec::Ones(3)), ContractViolation);
}

TEST_CASE("integrated flow matches the exact rotation") {
  const CatalogEntry e = spherical_pendulum(1.0, 1.0, 1.0, 0.6);
  const Point q = (Vec(2) << 0.3, -0.2).finished();
  const Vec lam = (Vec(1) << 1.3).finished();
  CHECK((e.system.integrated_flow(lam, 0.7, q) - e.system.flow(lam, 0.7, q)).norm() < 1e-12);
}

TEST_CASE("linearized isotropy action at the hanging point is a rotation") {
  const CatalogEntry e = spherical_pendulum(1.0, 1.0, 1.0, 0.0, 0.0);
  const Mat l = linearized_isotropy_action(e.system, Vec::Zero(2), (Vec(1) << 2.0).finished());
  Mat expect(2, 2);
  expect << 0.0, -2.0, 2.0, 0.0;
  CHECK((l - expect).norm() < 1e-8);
}

TEST_CASE("tube derivative rejects vectors off the slice") {
  const CatalogEntry e = spherical_pendulum(1.0, 1.0, 1.0, 0.6);
  const Point x = e.known_re[0].x;
  const Vec along_orbit = e.system.generators(x).col(0);
  CHECK_THROWS_AS(tube_extension_derivative(e.system, x, along_orbit, Vec::Ones(1)), ContractViolation);
}

TEST_CASE("tube derivative: integrated and exact flows agree") {
  const CatalogEntry e = testing::coupled_rigid_body();
  const Point x = e.known_re[0].x;
  const Mat m = e.system.checked_metric(x);
  const Mat a = e.system.generators(x);
  // slice vector: M-orthogonal to the orbit
  const Mat n = null_space(a.transpose() * m);
  REQUIRE(n.cols() == 1);
  const Vec xi = (Vec(3) << 0.2, -0.4, 0.7).finished();
  const Vec exact = tube_extension_derivative(e.system, x, n.col(0), xi);
  const Vec rk4 = tube_extension_derivative(e.system, x, n.col(0), xi, true);
  CHECK((exact - rk4).norm() < 1e-6 * (1.0 + exact.norm()));
}

}
