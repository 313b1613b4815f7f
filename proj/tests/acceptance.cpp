// Acceptance checks: one PASS/FAIL line per criterion.
#include "remstab/analysis.hpp"
#include "remstab/mechanics.hpp"
#include "remstab/splitting.hpp"
#include "remstab/stability.hpp"

#include "helpers.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace remstab;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void run(int id, const char* title, double limit_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs > limit_s) {
    o.pass = false;
    o.detail += " [over time limit]";
  }
  if (!o.pass) ++failures;
  std::printf("%s %d %s: %s (%.2f s, limit %.0f s)\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str(),
              secs, limit_s);
  std::fflush(stdout);
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(4);
  os << v;
  return os.str();
}

Mat identity_ip(const CatalogEntry& e) { return Mat::Identity(e.system.group_dim(), e.system.group_dim()); }

const std::vector<std::pair<double, double>> kTopSets{{1.0, 1.5}, {2.0, 1.0}, {1.0, 0.8}};

// Every relative equilibrium the catalog offers, with a few parameter choices.
std::vector<CatalogEntry> catalog_equilibria() {
  std::vector<CatalogEntry> out;
  for (auto [i, i3] : kTopSets) out.push_back(lagrange_top(i, i3, 1, 1, 1, 1.7));
  for (double th : {0.3, M_PI / 4, 1.2}) out.push_back(spherical_pendulum(1, 1, 1, th));
  out.push_back(spherical_pendulum(1, 1, 1, 0.0, 0.5));
  RigidBodyParams p;
  for (int axis = 0; axis < 3; ++axis) {
    p.axis = axis;
    out.push_back(rigid_body(p));
    out.push_back(testing::coupled_rigid_body(axis));
  }
  out.push_back(testing::occupied_synthetic());
  for (unsigned seed = 1; seed <= 4; ++seed) out.push_back(synthetic_product(random_synthetic_params(seed)));
  return out;
}

AnalysisConfig top_config(double i, double i3) {
  AnalysisConfig c;
  c.model = "lagrange_top";
  c.model_params = {{"i", i}, {"i3", i3}, {"m", 1}, {"g", 1}, {"l", 1}};
  c.ip_params = {1.0};
  c.sweep = SweepSpec{"zeta", 0.5, 3.0, 26};
  return c;
}

}  // namespace

int main() {
  run(1, "Lagrange-top locked inertia", 1.0, [] {
    double worst = 0.0;
    for (auto [i, i3] : kTopSets) {
      const CatalogEntry e = lagrange_top(i, i3, 1, 1, 1);
      Mat expect(2, 2);
      expect << i3, -i3, -i3, i3;
      worst = std::max(worst, max_abs(locked_inertia(e.system, Vec::Zero(3)) - expect));
    }
    return Outcome{worst <= 1e-10, "max deviation " + fmt(worst)};
  });

  run(2, "Lagrange-top threshold at k = 1", 10.0, [] {
    const AnalysisConfig c = top_config(1.0, 1.5);
    const RunResult r = run_analysis(c);
    if (!r.threshold || !r.threshold->value) return Outcome{false, "no verdict boundary found"};
    const double z2 = *r.threshold->value * *r.threshold->value;
    const double rel = std::abs(z2 - 2.0) / 2.0;
    // the grid verdict flips within one step of sqrt(2)
    const double step = 0.1;
    bool flip_ok = true;
    for (const auto& p : r.points) {
      const bool stable = p.rem.verdict == Verdict::GMU_STABLE;
      if (p.value < std::sqrt(2.0) - step && stable) flip_ok = false;
      if (p.value > std::sqrt(2.0) + step && !stable) flip_ok = false;
    }
    return Outcome{rel <= 1e-4 && flip_ok, "zeta^2 boundary " + fmt(z2) + " rel err " + fmt(rel)};
  });

  run(3, "optimal splitting parameter", 30.0, [] {
    bool ok = true;
    std::string d;
    for (auto [i, i3] : kTopSets) {
      AnalysisConfig c = top_config(i, i3);
      c.sweep = SweepSpec{"zeta", 0.1, 10.0, 26};
      c.optimize_ip = true;
      c.optimize_lo = 1e-2;
      c.optimize_hi = 1e2;
      const OptimizeResult o = optimize_ip(c);
      const double k = (2 * i - i3) / i3, bound = 4 * i / (i3 * i3);
      const double b = o.best_threshold * o.best_threshold;
      const double ek = std::abs(o.best_param - k), eb = std::abs(b - bound) / bound;
      ok = ok && ek <= 1e-3 && eb <= 1e-3;
      d += "(" + fmt(i) + "," + fmt(i3) + "): k " + fmt(o.best_param) + " err " + fmt(ek) + ", bound " + fmt(b) +
           " rel err " + fmt(eb) + "; ";
    }
    return Outcome{ok, d};
  });

  run(4, "correction term vanishes on the top", 5.0, [] {
    double worst = 0.0;
    const double mgl = 1.0;
    for (auto [i, i3] : kTopSets)
      for (double zeta : {0.7, 1.7, 2.9})
        for (double k : {0.25, 1.0, 4.0}) {
          const CatalogEntry e = lagrange_top(i, i3, 1, 1, 1, zeta);
          const SplittingData s = build_splitting(e.system, Vec::Zero(3), e.known_re[0].xi,
                                                  invariant_inner_product_family(e.system.lie, {k}));
          worst = std::max(worst, max_abs(correction_term(e.system, s).matrix));
        }
    return Outcome{worst <= 1e-8 * mgl, "max |corr| " + fmt(worst)};
  });

  run(5, "rem_test agrees with the phase-space oracle", 120.0, [] {
    int agree = 0, total = 0;
    for (int a = 0; a < 10; ++a)
      for (int b = 0; b < 10; ++b) {
        const double zeta = 0.5 + 2.5 * a / 9.0, k = 0.25 + 3.75 * b / 9.0;
        const CatalogEntry e = lagrange_top(1, 1.5, 1, 1, 1, zeta);
        const Mat ip = invariant_inner_product_family(e.system.lie, {k});
        const SplittingData s = build_splitting(e.system, Vec::Zero(3), e.known_re[0].xi, ip);
        ++total;
        if (rem_test(e.system, s).verdict == full_em_test(e.system, Vec::Zero(3), e.known_re[0].xi, ip).verdict)
          ++agree;
      }
    int pend_agree = 0;
    for (double th : {0.3, M_PI / 4, 1.2}) {
      const CatalogEntry e = spherical_pendulum(1, 1, 1, th);
      const auto& re = e.known_re[0];
      const SplittingData s = build_splitting(e.system, re.x, re.xi, identity_ip(e));
      if (rem_test(e.system, s).verdict == full_em_test(e.system, re.x, re.xi, identity_ip(e)).verdict) ++pend_agree;
    }
    return Outcome{agree == 100 && total == 100 && pend_agree == 3,
                   "top grid " + std::to_string(agree) + "/" + std::to_string(total) + ", pendulum " +
                       std::to_string(pend_agree) + "/3"};
  });

  run(6, "covariant identity suite", 120.0, [] {
    std::vector<CatalogEntry> models{lagrange_top(1, 1.5, 1, 1, 1, 1.7), spherical_pendulum(1, 1, 1, 0.7),
                                     testing::coupled_rigid_body(2), testing::occupied_synthetic()};
    double worst = 0.0;
    std::string where;
    for (const auto& e : models) {
      std::mt19937 rng(1234);
      const auto& sys = e.system;
      const int d = sys.group_dim();
      double model_worst = 0.0;
      for (int t = 0; t < 50; ++t) {
        Point x = e.known_re[0].x;
        if (t % 2) x += testing::random_vec(rng, sys.n, 0.05);  // half of the points off the equilibrium
        SplittingOptions o;
        o.require_re = false;
        const SplittingData s = build_splitting(sys, x, e.known_re[0].xi, identity_ip(e), o);
        auto alg = [&] { return testing::random_vec(rng, d); };
        auto slice = [&] { return Vec(s.slice.vectors * testing::random_vec(rng, s.slice.dim())); };
        const IdentitySides sides[5] = {covariant_item_i(sys, s, alg(), alg(), alg()),
                                        covariant_item_ii(sys, s, alg(), alg(), slice()),
                                        covariant_item_iii(sys, s, alg(), slice(), alg()),
                                        covariant_item_iv(sys, s, alg(), slice(), alg()),
                                        covariant_item_v(sys, s, alg(), slice(), slice())};
        for (const auto& side : sides) model_worst = std::max(model_worst, side.relative_error());
      }
      where += e.id + " " + fmt(model_worst) + "; ";
      worst = std::max(worst, model_worst);
    }
    return Outcome{worst <= 1e-5, "worst relative error per model: " + where};
  });

  run(7, "block structure of the Hessian and Omega", 120.0, [] {
    int checked = 0, skipped = 0;
    double off = 0.0, anti = 0.0, cross = 0.0;
    bool ok = true;
    for (const auto& e : catalog_equilibria()) {
      const auto& re = e.known_re[0];
      const SplittingData s = build_splitting(e.system, re.x, re.xi, identity_ip(e));
      if (!arnold_form(e.system, s).nondegenerate) {
        ++skipped;
        continue;
      }
      const BlockForms b = block_forms(e.system, s);
      const double om = max_abs(b.omega);
      const double c = omega_crosscheck(e.system, s, b);
      const double offr = b.diagonal_norm > 0 ? b.offblock_max / b.diagonal_norm : b.offblock_max;
      off = std::max(off, offr);
      anti = std::max(anti, b.omega_antisymmetry);
      cross = std::max(cross, om > 0 ? c / om : c);
      ok = ok && offr <= 1e-6 && b.omega_antisymmetry <= 1e-9 && c <= 1e-6 * om &&
           b.omega_chart_residual <= 1e-6 * std::max(om, 1.0);
      ++checked;
    }
    return Outcome{ok && checked > 0, std::to_string(checked) + " equilibria (" + std::to_string(skipped) +
                                          " with degenerate Arnold form skipped); off/diag " + fmt(off) +
                                          ", antisymmetry " + fmt(anti) + ", crosscheck/|Omega| " + fmt(cross)};
  });

  run(8, "regular-case amended-potential identity", 10.0, [] {
    double worst = 0.0;
    for (double th : {0.3, M_PI / 4, 1.2}) {
      const CatalogEntry e = spherical_pendulum(1, 1, 1, th);
      const auto r = regular_case_amended_check(e.system, build_splitting(e.system, e.known_re[0].x,
                                                                          e.known_re[0].xi, identity_ip(e)));
      if (!r) return Outcome{false, "check not applicable"};
      worst = std::max(worst, *r);
    }
    return Outcome{worst <= 1e-5, "max scaled residual " + fmt(worst)};
  });

  run(9, "oracle signature independent of the complement", 60.0, [] {
    int configs = 0;
    bool ok = true;
    for (const auto& e : catalog_equilibria()) {
      const auto& re = e.known_re[0];
      const StabilityReport base = full_em_test(e.system, re.x, re.xi, identity_ip(e));
      for (unsigned seed = 1; seed <= 5; ++seed) {
        OracleOptions o;
        o.complement_seed = seed * 7919u;
        const StabilityReport r = full_em_test(e.system, re.x, re.xi, identity_ip(e), o);
        for (const char* key : {"n_plus", "n_minus", "n_zero"})
          if (r.residuals.at(key) != base.residuals.at(key)) ok = false;
      }
      ++configs;
    }
    return Outcome{ok, std::to_string(configs) + " configurations x 5 complements"};
  });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
