#include "remstab/finite_difference.hpp"
#include "remstab/mechanics.hpp"
#include "remstab/report.hpp"
#include "remstab/rotation.hpp"

#include "helpers.hpp"

#include <doctest.h>

#include <cmath>

using namespace remstab;

TEST_SUITE("model_catalog") {

TEST_CASE("top metric against the kinetic energy of the rotation curve") {
  // E_Lambda = Lambda E Lambda^T and delta Lambda = eps^ Lambda; eps from a
  // numerical derivative of the rotation along a chart line.
  std::mt19937 rng(21);
  const double i = 1.3, i3 = 0.9;
  const CatalogEntry e = lagrange_top(i, i3, 1, 1, 1);
  const Eigen::Matrix3d body = Eigen::Vector3d(i, i, i3).asDiagonal();
  for (int t = 0; t < 5; ++t) {
    const Vec q = testing::random_vec(rng, 3, 0.3);
    const Vec u = testing::random_vec(rng, 3), w = testing::random_vec(rng, 3);
    const Eigen::Matrix3d lam = rot::expm(q);
    auto eps = [&](const Vec& v) -> Eigen::Vector3d {
      const Vec d = fd::derivative(
          [&](double s) -> Vec {
            const Eigen::Matrix3d r = rot::expm(Eigen::Vector3d(q + s * v));
            return Eigen::Map<const Vec>(r.data(), 9);
          },
          0.0, 1e-3);
      const Eigen::Matrix3d rdot = Eigen::Map<const Eigen::Matrix3d>(d.data());
      return rot::vee(rdot * lam.transpose());
    };
    const double direct = eps(u).dot(lam * body * lam.transpose() * eps(w));
    const double chart = u.dot(e.system.metric(q) * w);
    CHECK(std::abs(direct - chart) <= 1e-10 * (1 + std::abs(direct)));
  }
}

TEST_CASE("top analytic data") {
  const CatalogEntry e = lagrange_top(1, 1.5, 1, 1, 1);
  REQUIRE(e.analytic.has_value());
  CHECK(e.analytic->threshold({1.0}) == doctest::Approx(2.0));
  CHECK(*e.analytic->optimal_ip == doctest::Approx(1.0 / 3.0));
  CHECK(*e.analytic->optimal_threshold == doctest::Approx(16.0 / 9.0));
  CHECK(e.warnings.empty());
  CHECK_FALSE(lagrange_top(1, 2.5, 1, 1, 1).warnings.empty());
  CHECK_THROWS_AS(lagrange_top(-1, 1, 1, 1, 1), ContractViolation);
}

TEST_CASE("pendulum chart guards") {
  CHECK_THROWS_AS(spherical_pendulum(1, 1, 1, M_PI), ChartDomainError);
  CHECK_THROWS_AS(spherical_pendulum(1, 1, 1, 1.7), ContractViolation);
  const CatalogEntry hang = spherical_pendulum(1, 1, 1, 0.0, 0.0);
  CHECK(hang.known_re[0].x.norm() == 0.0);
  // the cone relation omega^2 = g / (l cos theta0)
  const CatalogEntry cone = spherical_pendulum(2, 9.8, 0.5, 0.4);
  CHECK(cone.known_re[0].xi(0) == doctest::Approx(std::sqrt(9.8 / (0.5 * std::cos(0.4)))));
}

TEST_CASE("build_model vocabulary") {
  CHECK(build_model("lagrange_top", {{"i", 1.0}, {"zeta", 1.5}}).system.parameters.at("zeta") == 1.5);
  CHECK_THROWS_AS(build_model("lagrange_top", {{"inertia", 1.0}}), ContractViolation);
  CHECK_THROWS_AS(build_model("double_pendulum", {}), ContractViolation);
  const CatalogEntry syn = build_model("synthetic_product", {{"seed", 3}});
  CHECK(syn.system.n >= 2);
  const CatalogEntry rb = build_model("rigid_body", {{"axis", 0}, {"shape", 1}, {"d2", 0.2}, {"c12", 0.1}});
  CHECK(rb.system.n == 4);
  CHECK_THROWS_AS(build_model("rigid_body", {{"shape", 1}, {"d3", 0.2}, {"c13", 0.1}}), ContractViolation);
  CHECK(catalog_ids().size() == 4);
}

TEST_CASE("relative equilibrium placement in synthetic models") {
  SyntheticParams p = random_synthetic_params(4);
  p.xi = Vec::Constant(static_cast<Eigen::Index>(p.weights.size()), 0.01);
  CHECK_THROWS_AS(place_on_relative_equilibrium(p, {0}), ContractViolation);
  const CatalogEntry e = testing::occupied_synthetic();
  CHECK(e.known_re[0].x(0) > 0.0);
  CHECK(e.known_re[0].x(2) > 0.0);
}

}

TEST_SUITE("report") {

TEST_CASE("report JSON round trip") {
  StabilityReport r;
  r.verdict = Verdict::GMU_STABLE;
  r.route = Route::BLOCK_COROLLARY;
  r.dim_check = 3;
  r.block_spectra["arnold"] = {-1.0, 0.25};
  r.block_spectra["empty"] = {};
  r.residuals["re_residual"] = 1.5e-12;
  r.assumptions = {"G_mu compact (asserted by the model)"};
  r.parameters = {{"model", "lagrange_top"}, {"value", 1.25}};
  const StabilityReport back = report_from_json(nlohmann::json::parse(to_json(r).dump()));
  CHECK(back == r);
}

TEST_CASE("non-finite residuals are dropped") {
  StabilityReport r;
  r.residuals["margin"] = std::numeric_limits<double>::infinity();
  r.residuals["ok"] = 1.0;
  const auto j = to_json(r);
  CHECK_FALSE(j["residuals"].contains("margin"));
  CHECK(j["residuals"]["ok"] == 1.0);
}

TEST_CASE("enum names") {
  for (Verdict v : {Verdict::GMU_STABLE, Verdict::INCONCLUSIVE, Verdict::NOT_APPLICABLE})
    CHECK(verdict_from_string(to_string(v)) == v);
  for (Route x : {Route::REM_POSITIVE_BRANCH, Route::REM_DEFINITE_BRANCH, Route::BLOCK_COROLLARY, Route::ORACLE_ONLY})
    CHECK(route_from_string(to_string(x)) == x);
  CHECK_THROWS(verdict_from_string("UNSTABLE"));
}

}
