#include "remstab/lie_algebra.hpp"
#include "remstab/rotation.hpp"

#include "helpers.hpp"

#include <doctest.h>

#include <Eigen/Geometry>

using namespace remstab;

TEST_SUITE("lie_algebra") {

TEST_CASE("so(3) bracket is the cross product") {
  std::mt19937 rng(2);
  const LieAlgebra g = LieAlgebra::so3();
  for (int t = 0; t < 10; ++t) {
    const Eigen::Vector3d a = testing::random_vec(rng, 3), b = testing::random_vec(rng, 3);
    CHECK((g.bracket(a, b) - Vec(a.cross(b))).norm() < 1e-14);
  }
}

TEST_CASE("coadjoint convention pairs with the bracket") {
  std::mt19937 rng(3);
  const LieAlgebra g = LieAlgebra::direct_sum(LieAlgebra::so3(), LieAlgebra::abelian(2));
  CHECK(g.dim() == 5);
  for (int t = 0; t < 10; ++t) {
    const Vec lam = testing::random_vec(rng, 5), mu = testing::random_vec(rng, 5), eta = testing::random_vec(rng, 5);
    CHECK(g.coadjoint(lam, mu).dot(eta) == doctest::Approx(mu.dot(g.bracket(lam, eta))).epsilon(1e-13));
    CHECK((g.ad_matrix(lam) * eta - g.bracket(lam, eta)).norm() < 1e-14);
  }
}

TEST_CASE("structure constants are validated") {
  // [e0, e1] = e1 without the antisymmetric partner
  CHECK_THROWS_AS(LieAlgebra(2, {{0, 1, 1, 1.0}}, "broken"), ContractViolation);
  CHECK_THROWS_AS(LieAlgebra(2, {{0, 2, 1, 1.0}, {2, 0, 1, -1.0}}, "range"), ContractViolation);
  // heisenberg-like with a Jacobi defect: [e0,e1]=e2, [e1,e2]=e0, [e0,e2]=e0
  CHECK_THROWS_AS(LieAlgebra(3, {{0, 1, 2, 1.0}, {1, 0, 2, -1.0}, {1, 2, 0, 1.0}, {2, 1, 0, -1.0},
                                 {0, 2, 0, 1.0}, {2, 0, 0, -1.0}}, "nonjacobi"),
                  ContractViolation);
  const LieAlgebra aff(2, {{0, 1, 1, 1.0}, {1, 0, 1, -1.0}}, "aff");
  CHECK_FALSE(aff.is_abelian());
  CHECK(aff.jacobi_defect() == 0.0);
}

TEST_CASE("momentum isotropy algebra") {
  const LieAlgebra g = LieAlgebra::so3();
  const Vec mu = (Vec(3) << 0.0, 0.0, 2.0).finished();
  const SubspaceBasis gmu = momentum_isotropy_algebra(g, mu);
  REQUIRE(gmu.dim() == 1);
  CHECK(same_subspace(gmu.vectors, Vec(Eigen::Vector3d::UnitZ())));
  CHECK(momentum_isotropy_algebra(g, Vec::Zero(3)).dim() == 3);
  CHECK(momentum_isotropy_algebra(LieAlgebra::abelian(2), Vec::Ones(2)).dim() == 2);
}

TEST_CASE("inner product family") {
  const LieAlgebra g = LieAlgebra::abelian(2);
  const Mat k = invariant_inner_product_family(g, {0.25});
  CHECK(k(0, 0) == 0.25);
  CHECK(k(1, 1) == 1.0);
  CHECK(invariant_inner_product_family(g, {2.0, 0.5, 1.0})(0, 1) == 0.5);
  CHECK_THROWS_AS(invariant_inner_product_family(g, {-1.0}), ContractViolation);
  CHECK_THROWS_AS(invariant_inner_product_family(g, {1, 2, 3, 4}), ContractViolation);
}

TEST_CASE("rotation exponential and logarithm") {
  std::mt19937 rng(4);
  for (int t = 0; t < 10; ++t) {
    const Eigen::Vector3d phi = testing::random_vec(rng, 3, 0.4);
    const Eigen::Matrix3d r = Eigen::AngleAxisd(phi.norm(), phi.normalized()).toRotationMatrix();
    CHECK((rot::expm(phi) - r).norm() < 1e-13);
    CHECK((rot::logm(r) - phi).norm() < 1e-12);
    // exp(phi + t v) = exp(t J_l v) exp(phi) to first order
    const Eigen::Vector3d v = testing::random_vec(rng, 3);
    const double h = 1e-6;
    const Eigen::Matrix3d d = (rot::expm(phi + h * v) - rot::expm(phi - h * v)) / (2 * h);
    CHECK((rot::vee(d * r.transpose()) - rot::left_jacobian(phi) * v).norm() < 1e-8);
    CHECK((rot::left_jacobian_inverse(phi) * rot::left_jacobian(phi) - Eigen::Matrix3d::Identity()).norm() < 1e-12);
  }
  CHECK_THROWS_AS(rot::logm(rot::expm(Eigen::Vector3d(0, 0, 2.0))), ChartDomainError);
}

}
