#include "remstab/finite_difference.hpp"
#include "remstab/linalg.hpp"

#include "helpers.hpp"

#include <doctest.h>

#include <cmath>

using namespace remstab;

TEST_SUITE("linalg") {

TEST_CASE("null space of a rank-one matrix") {
  Mat a(2, 3);
  a << 1, 2, 3, 2, 4, 6;
  const Mat n = null_space(a);
  CHECK(n.cols() == 2);
  CHECK((a * n).norm() < 1e-12);
  CHECK((n.transpose() * n - Mat::Identity(2, 2)).norm() < 1e-12);
}

TEST_CASE("null space edge shapes") {
  CHECK(null_space(Mat(0, 3)).cols() == 3);
  CHECK(null_space(Mat(2, 0)).cols() == 0);
}

TEST_CASE("intersection of two planes in R^3 is their common line") {
  Mat u(3, 2), w(3, 2);
  u << 1, 0, 0, 1, 0, 0;  // xy-plane
  w << 1, 0, 0, 0, 0, 1;  // xz-plane
  const Mat l = intersect(u, w);
  REQUIRE(l.cols() == 1);
  CHECK(std::abs(std::abs(l(0, 0)) - 1.0) < 1e-12);
  CHECK(intersect(u, Mat(3, 0)).cols() == 0);
}

TEST_CASE("principal angle between two lines") {
  const double th = 0.3;
  Mat u(2, 1), w(2, 1);
  u << 1, 0;
  w << std::cos(th), std::sin(th);
  const Vec ang = principal_angles(u, w);
  REQUIRE(ang.size() == 1);
  CHECK(ang(0) == doctest::Approx(th).epsilon(1e-12));
  CHECK_FALSE(same_subspace(u, w));
  CHECK(same_subspace(u, -2.0 * u));
}

TEST_CASE("orthonormalize under an SPD inner product") {
  std::mt19937 rng(1);
  const Mat b = testing::random_mat(rng, 4, 4);
  const Mat g = b * b.transpose() + Mat::Identity(4, 4);
  const Mat v = testing::random_mat(rng, 4, 3);
  const Mat q = orthonormalize(v, g);
  CHECK((q.transpose() * g * q - Mat::Identity(3, 3)).norm() < 1e-12);
  CHECK(same_subspace(q, v));
  Mat dep(4, 2);
  dep.col(0) = v.col(0);
  dep.col(1) = 2.0 * v.col(0);
  CHECK_THROWS_AS(orthonormalize(dep, g), NumericalInconsistency);
}

TEST_CASE("inertia with a definiteness band") {
  Vec ev(4);
  ev << -1.0, 1e-14, 0.5, 2.0;
  const Inertia in = inertia_of(ev, definiteness_band(ev));
  CHECK(in == Inertia{2, 1, 1});
  CHECK(definiteness_band(Vec::Zero(3)) == doctest::Approx(1e-12));
}

TEST_CASE("finite differences of closed-form functions") {
  const Vec x = (Vec(2) << 0.3, -0.7).finished();
  // f = sin(x0) x1^2 + x0^3
  const fd::ScalarFn f = [](const Vec& v) { return std::sin(v(0)) * v(1) * v(1) + v(0) * v(0) * v(0); };
  Mat h(2, 2);
  h << -std::sin(x(0)) * x(1) * x(1) + 6 * x(0), 2 * std::cos(x(0)) * x(1), 2 * std::cos(x(0)) * x(1),
      2 * std::sin(x(0));
  CHECK((fd::hessian(f, x, 1e-4) - h).norm() < 1e-7);
  const Vec g = fd::gradient(f, x, 1e-5);
  CHECK(g(0) == doctest::Approx(std::cos(x(0)) * x(1) * x(1) + 3 * x(0) * x(0)).epsilon(1e-9));
  const fd::VectorFn m = [](const Vec& v) { return (Vec(2) << v(0) * v(1), std::exp(v(0))).finished(); };
  Mat j(2, 2);
  j << x(1), x(0), std::exp(x(0)), 0;
  CHECK((fd::jacobian(m, x, 1e-5) - j).norm() < 1e-9);
  const Vec mp = fd::mixed_partial([](double s, double t) { return (Vec(1) << std::sin(s) * t * t + s * t).finished(); },
                                   1e-3, 1e-3);
  CHECK(mp(0) == doctest::Approx(1.0).epsilon(1e-8));
}

}
