#include "remstab/mechanics.hpp"

#include "helpers.hpp"

#include <doctest.h>

#include <cmath>

using namespace remstab;

namespace {

// II and its derivative for the synthetic torus action, written out by hand:
// II_jk = sum_p m_p w_jp w_kp |x_p|^2.
Mat synthetic_ii(const SyntheticParams& p, const Vec& x) {
  const int d = static_cast<int>(p.weights.size());
  Mat ii = Mat::Zero(d, d);
  for (int k = 0; k < p.planes; ++k) {
    const double rho = x(2 * k) * x(2 * k) + x(2 * k + 1) * x(2 * k + 1);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) ii(i, j) += p.plane_mass[k] * p.weights[i][k] * p.weights[j][k] * rho;
  }
  return ii;
}

Mat synthetic_dii(const SyntheticParams& p, const Vec& x, const Vec& v) {
  const int d = static_cast<int>(p.weights.size());
  Mat out = Mat::Zero(d, d);
  for (int k = 0; k < p.planes; ++k) {
    const double drho = 2.0 * (x(2 * k) * v(2 * k) + x(2 * k + 1) * v(2 * k + 1));
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) out(i, j) += p.plane_mass[k] * p.weights[i][k] * p.weights[j][k] * drho;
  }
  return out;
}

}  // namespace

TEST_SUITE("mechanics_core") {

TEST_CASE("locked inertia of the sleeping top at the identity") {
  for (auto [i, i3] : {std::pair{1.0, 1.5}, {2.0, 1.0}, {1.0, 0.8}}) {
    const CatalogEntry e = lagrange_top(i, i3, 1, 1, 1);
    Mat expect(2, 2);
    expect << i3, -i3, -i3, i3;
    CHECK((locked_inertia(e.system, Vec::Zero(3)) - expect).norm() < 1e-10);
  }
}

TEST_CASE("synthetic locked inertia and its derivative against hand-coded forms") {
  for (unsigned seed = 1; seed <= 8; ++seed) {
    const SyntheticParams p = random_synthetic_params(seed);
    const CatalogEntry e = synthetic_product(p);
    std::mt19937 rng(seed);
    const Vec x = testing::random_vec(rng, e.system.n);
    const Vec v = testing::random_vec(rng, e.system.n);
    CHECK((locked_inertia(e.system, x) - synthetic_ii(p, x)).norm() < 1e-12 * (1 + synthetic_ii(p, x).norm()));
    CHECK((d_locked_inertia(e.system, x, v) - synthetic_dii(p, x, v)).norm() < 1e-8);
  }
}

TEST_CASE("momentum and augmented potential") {
  const CatalogEntry e = lagrange_top(1, 1.5, 1, 1, 1, 2.0);
  const Vec xi = (Vec(2) << 2.0, 0.0).finished();
  const Vec mu = momentum_of_generator(e.system, Vec::Zero(3), xi);
  CHECK(mu(0) == doctest::Approx(3.0));
  CHECK(mu(1) == doctest::Approx(-3.0));
  // V(I) = mgl, II(xi, xi) = i3 zeta^2
  CHECK(augmented_potential(e.system, Vec::Zero(3), xi) == doctest::Approx(1.0 - 0.5 * 1.5 * 4.0));
}

TEST_CASE("known relative equilibria pass the residual check across parameters") {
  for (double s : {0.5, 0.8, 1.0, 1.7, 3.0}) {
    const CatalogEntry top = lagrange_top(s, 1.2 * s, 1.0, 9.8 * s, 0.5, 2.0 / s);
    CHECK(re_residual(top.system, top.known_re[0].x, top.known_re[0].xi).norm <= 1e-8);
    const CatalogEntry pend = spherical_pendulum(s, 9.8, 0.5 * s, 0.25 * s);
    CHECK(re_residual(pend.system, pend.known_re[0].x, pend.known_re[0].xi).norm <= 1e-8);
    RigidBodyParams rp;
    rp.inertia = Eigen::Vector3d(1.0, 1.0 + s, 2.0 + s);
    rp.omega = s;
    rp.axis = static_cast<int>(s * 10) % 3;
    rp.shape = true;
    rp.d = Eigen::Vector3d(0.1 * s, 0.2, 0.3);
    const CatalogEntry rb = rigid_body(rp);
    CHECK(re_residual(rb.system, rb.known_re[0].x, rb.known_re[0].xi).norm <= 1e-8);
    const CatalogEntry syn = testing::occupied_synthetic(1.5 + s, 0.3 * s);
    CHECK(re_residual(syn.system, syn.known_re[0].x, syn.known_re[0].xi).norm <= 1e-8);
  }
}

TEST_CASE("off-equilibrium points are rejected") {
  const CatalogEntry pend = spherical_pendulum(1, 1, 1, 0.7);
  const Vec slow = 0.5 * pend.known_re[0].xi;
  CHECK_THROWS_AS(require_relative_equilibrium(pend.system, pend.known_re[0].x, slow), NotRelativeEquilibrium);
}

TEST_CASE("Newton iteration recovers the conical pendulum") {
  const CatalogEntry pend = spherical_pendulum(1, 1, 1, 0.7);
  const Point start = pend.known_re[0].x + (Vec(2) << 0.05, 0.0).finished();
  const NewtonResult r = find_relative_equilibrium(pend.system, start, pend.known_re[0].xi);
  CHECK(r.converged);
  // any point on the circle |q| = tan(theta0/2) will do
  CHECK(r.x.norm() == doctest::Approx(std::tan(0.35)).epsilon(1e-7));
}

TEST_CASE("chi one-form") {
  const CatalogEntry e = lagrange_top(1, 1.5, 1, 1, 1);
  const Vec xi = (Vec(2) << 1.0, 0.5).finished();
  const Vec chi = chi_one_form(e.system, Vec::Zero(3), xi);
  // M e3 (1 - 0.5) at the identity
  CHECK((chi - Vec(Eigen::Vector3d(0, 0, 0.75))).norm() < 1e-12);
}

}
