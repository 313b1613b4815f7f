#include "remstab/stability.hpp"

#include "remstab/finite_difference.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace remstab {

namespace {

Mat block_diag(const std::vector<Mat>& blocks) {
  Eigen::Index n = 0;
  for (const auto& b : blocks) n += b.rows();
  Mat out = Mat::Zero(n, n);
  Eigen::Index at = 0;
  for (const auto& b : blocks) {
    out.block(at, at, b.rows(), b.cols()) = b;
    at += b.rows();
  }
  return out;
}

std::vector<double> spectrum(const QuadraticForm& f) { return to_std(f.eigenvalues); }

// Nested central differences of a function of size |f| carry roughly
// 1e-7 (1 + |f|) absolute noise per unit direction.
double fd_noise_floor(double f_scale, const Mat& basis) {
  double c = 0.0;
  for (Eigen::Index j = 0; j < basis.cols(); ++j) c = std::max(c, basis.col(j).norm());
  return 1e-7 * (1.0 + std::abs(f_scale)) * c * c;
}

}  // namespace

QuadraticForm::QuadraticForm(SubspaceBasis b, const Mat& m, std::string l)
    : basis(std::move(b)), matrix(sym(m)), label(std::move(l)) {
  asymmetry = max_abs(m - m.transpose());
  eigenvalues = symmetric_eigenvalues(matrix);
}

double QuadraticForm::band(std::optional<double> tol) const {
  return tol ? *tol : std::max(definiteness_band(eigenvalues), noise_floor);
}

Inertia QuadraticForm::inertia(std::optional<double> tol) const {
  return inertia_of(eigenvalues, band(tol));
}

bool QuadraticForm::positive_definite(std::optional<double> tol) const {
  return dim() == 0 || eigenvalues(0) > band(tol);
}

bool QuadraticForm::negative_definite(std::optional<double> tol) const {
  return dim() == 0 || eigenvalues(eigenvalues.size() - 1) < -band(tol);
}

bool QuadraticForm::nondegenerate(std::optional<double> tol) const {
  if (dim() == 0) return true;
  return eigenvalues.cwiseAbs().minCoeff() > band(tol);
}

Mat augmented_hessian_chart(const ChartedSystem& sys, const Point& x, const AlgebraVector& eta) {
  const fd::ScalarFn v = [&](const Vec& q) { return augmented_potential(sys, q, eta); };
  return fd::hessian(v, x, sys.fd_step2(x));
}

Mat correction_matrix(const ChartedSystem& sys, const SplittingData& split, const Mat& vectors) {
  const Eigen::Index k = vectors.cols();
  if (split.r.empty() || split.xi_perp.norm() == 0.0 || k == 0) return Mat::Zero(k, k);
  const Mat& r = split.r.vectors;
  Mat ar(r.cols(), k);
  for (Eigen::Index i = 0; i < k; ++i)
    ar.col(i) = r.transpose() * (d_locked_inertia(sys, split.x, vectors.col(i)) * split.xi_perp);
  return sym(ar.transpose() * split.inertia_r().ldlt().solve(ar));
}

QuadraticForm correction_term(const ChartedSystem& sys, const SplittingData& split) {
  return QuadraticForm(split.sigma, correction_matrix(sys, split, split.sigma.vectors), "correction");
}

Mat restricted_hessian_matrix(const ChartedSystem& sys, const SplittingData& split, const Mat& vectors) {
  if (vectors.cols() == 0) return Mat(0, 0);
  const Mat hess = augmented_hessian_chart(sys, split.x, split.xi_perp);
  return sym(vectors.transpose() * hess * vectors) + correction_matrix(sys, split, vectors);
}

QuadraticForm restricted_augmented_hessian(const ChartedSystem& sys, const SplittingData& split) {
  // The chart Hessian is only meaningful at a critical point of V_{xi_perp}.
  require_relative_equilibrium(sys, split.x, split.xi_perp);
  QuadraticForm f(split.sigma, restricted_hessian_matrix(sys, split, split.sigma.vectors), "hessian_sigma");
  f.noise_floor = fd_noise_floor(augmented_potential(sys, split.x, split.xi_perp), split.sigma.vectors);
  return f;
}

StabilityReport rem_test(const ChartedSystem& sys, const SplittingData& split,
                         std::optional<double> definiteness_tol) {
  StabilityReport rep;
  rep.dim_check = split.dim_check;
  if (rep.dim_check < 0) throw NumericalInconsistency("rem_test: negative slice dimension");
  const QuadraticForm form = restricted_augmented_hessian(sys, split);
  const QuadraticForm corr = correction_term(sys, split);
  rep.block_spectra["hessian_sigma"] = spectrum(form);
  rep.block_spectra["correction"] = spectrum(corr);
  rep.residuals["re_residual"] = re_residual(sys, split.x, split.xi).norm;
  rep.residuals["xi_in_gmu"] = split.xi_in_gmu_residual;
  rep.residuals["definiteness_band"] = form.band(definiteness_tol);
  rep.residuals["dim_sigma"] = static_cast<double>(form.dim());
  rep.residuals["correction_norm"] = max_abs(corr.matrix);
  rep.assumptions = split.assumptions;
  if (rep.dim_check > 0) {
    rep.route = Route::REM_POSITIVE_BRANCH;
    rep.verdict = form.positive_definite(definiteness_tol) ? Verdict::GMU_STABLE : Verdict::INCONCLUSIVE;
  } else {
    rep.route = Route::REM_DEFINITE_BRANCH;
    rep.verdict = form.definite(definiteness_tol) ? Verdict::GMU_STABLE : Verdict::INCONCLUSIVE;
  }
  if (form.dim() == 0) rep.assumptions.push_back("test space is trivial; definiteness holds vacuously");
  return rep;
}

AlgebraVector arnold_lambda(const LieAlgebra& lie, const SplittingData& split, const AlgebraVector& lam) {
  const Mat& r = split.r.vectors;
  const auto iir = split.inertia_r().ldlt();
  const Vec first = r * iir.solve(r.transpose() * lie.coadjoint(lam, split.mu));
  const Vec mr = r * iir.solve(r.transpose() * split.mu);
  return first + split.r_part(lie.bracket(lam, mr));
}

ArnoldForm arnold_form(const ChartedSystem& sys, const SplittingData& split, std::optional<double> tol) {
  const Mat& q = split.qmu.vectors;
  const Eigen::Index k = q.cols();
  Mat raw(k, k);
  for (Eigen::Index j = 0; j < k; ++j) {
    const Vec lj = arnold_lambda(sys.lie, split, q.col(j));
    for (Eigen::Index i = 0; i < k; ++i) raw(i, j) = sys.lie.coadjoint(q.col(i), split.mu).dot(lj);
  }
  ArnoldForm out;
  out.raw = raw;
  const double asym = max_abs(raw - raw.transpose());
  out.symmetric = asym <= 1e-8 * std::max(1.0, max_abs(raw));
  out.form = QuadraticForm(split.qmu, raw, "arnold");
  out.nondegenerate = out.symmetric && out.form.nondegenerate(tol);
  return out;
}

StabilityReport block_corollary_test(const ChartedSystem& sys, const SplittingData& split_in,
                                     std::optional<double> definiteness_tol) {
  StabilityReport rep;
  rep.route = Route::BLOCK_COROLLARY;
  rep.dim_check = split_in.dim_check;
  rep.assumptions = split_in.assumptions;
  const ArnoldForm ar = arnold_form(sys, split_in, definiteness_tol);
  rep.block_spectra["arnold"] = spectrum(ar.form);
  rep.residuals["arnold_asymmetry"] = ar.form.asymmetry;
  if (!ar.symmetric) {
    rep.verdict = Verdict::NOT_APPLICABLE;
    rep.assumptions.push_back("Arnold form is not symmetric; block route skipped");
    return rep;
  }
  if (!ar.nondegenerate) {
    rep.verdict = Verdict::NOT_APPLICABLE;
    rep.assumptions.push_back("Arnold form is degenerate; block route not applicable");
    return rep;
  }
  SplittingData split = split_in;
  if (!split.wint_built) build_wint(sys, split);
  if (split.sigma_int.dim() != split.slice.dim()) {
    std::ostringstream os;
    os << "block_corollary_test: dim Sigma_int = " << split.sigma_int.dim() << " but dim S = "
       << split.slice.dim() << " with a non-degenerate Arnold form";
    throw NumericalInconsistency(os.str());
  }
  require_relative_equilibrium(sys, split.x, split.xi_perp);
  const QuadraticForm hint(split.sigma_int, restricted_hessian_matrix(sys, split, split.sigma_int.vectors),
                           "hessian_sigma_int");
  rep.block_spectra["hessian_sigma_int"] = spectrum(hint);
  const SigmaDecompositionReport dec = check_sigma_decomposition(split, true);
  rep.residuals["sigma_direct_sum"] = dec.direct_sum ? 1.0 : 0.0;
  if (!dec.direct_sum)
    throw NumericalInconsistency("block_corollary_test: Sigma_rig + Sigma_int is not a direct sum");
  bool stable;
  if (rep.dim_check > 0)
    stable = hint.positive_definite(definiteness_tol) && ar.form.positive_definite(definiteness_tol);
  else
    stable = ar.form.definite(definiteness_tol);
  rep.verdict = stable ? Verdict::GMU_STABLE : Verdict::INCONCLUSIVE;
  return rep;
}

Mat c_operator(const ChartedSystem& sys, const SplittingData& split, const TangentVector& v) {
  const Mat& r = split.r.vectors;
  Mat out(split.slice.dim(), r.cols());
  const Mat sm = split.slice.vectors.transpose() * split.metric;
  for (Eigen::Index j = 0; j < r.cols(); ++j)
    out.col(j) = sm * tube_extension_derivative(sys, split.x, v, r.col(j));
  return out;
}

double c_pairing(const ChartedSystem& sys, const SplittingData& split, const TangentVector& a,
                 const AlgebraVector& xi_r, const TangentVector& b) {
  return b.dot(split.metric * tube_extension_derivative(sys, split.x, a, xi_r));
}

Mat phase_hessian(const ChartedSystem& sys, const Point& x, const AlgebraVector& xi,
                  const AlgebraVector& eta) {
  const int n = sys.n;
  const Mat m0 = sys.checked_metric(x);
  const Vec p0 = m0 * (sys.generators(x) * xi);
  const fd::ScalarFn fq = [&](const Vec& q) {
    const Mat m = sys.checked_metric(q);
    return 0.5 * p0.dot(m.llt().solve(p0)) + sys.potential(q) - p0.dot(sys.generators(q) * eta);
  };
  const fd::VectorFn dfdp = [&](const Vec& q) -> Vec {
    return sys.checked_metric(q).llt().solve(p0) - sys.generators(q) * eta;
  };
  Mat h(2 * n, 2 * n);
  h.topLeftCorner(n, n) = fd::hessian(fq, x, sys.fd_step2(x));
  const Mat qp = fd::jacobian(dfdp, x, sys.fd_step(x)).transpose();  // rows q, cols p
  h.topRightCorner(n, n) = qp;
  h.bottomLeftCorner(n, n) = qp.transpose();
  h.bottomRightCorner(n, n) = sym(m0.inverse());
  return h;
}

BlockForms block_forms(const ChartedSystem& sys, const SplittingData& split_in) {
  const ArnoldForm ar = arnold_form(sys, split_in);
  if (!ar.nondegenerate) throw NumericalInconsistency("block_forms: Arnold form is degenerate");
  SplittingData split = split_in;
  if (!split.wint_built) build_wint(sys, split);
  const LieAlgebra& lie = sys.lie;
  const int n = split.n();
  BlockForms b;
  b.nq = static_cast<int>(split.qmu.dim());
  b.ni = static_cast<int>(split.sigma_int.dim());
  b.ns = static_cast<int>(split.slice.dim());
  if (b.ni != b.ns) throw NumericalInconsistency("block_forms: dim Sigma_int differs from dim S");
  const int nq = b.nq, ni = b.ni, ns = b.ns, nt = nq + ni + ns;

  const Mat& qv = split.qmu.vectors;
  const Mat& lam_a = split.wint_lambda;
  const Mat& a_part = split.wint_b;
  const Mat& m = split.metric;
  const Mat& a = split.generators;
  const Mat& s = split.slice.vectors;
  const Vec& xp = split.xi_perp;
  const Vec& mu = split.mu;

  // Tube derivatives of each slice part along xi_perp.
  std::vector<Vec> tube(ni);
  for (int c = 0; c < ni; ++c) tube[c] = tube_extension_derivative(sys, split.x, a_part.col(c), xp);

  b.xi_block.resize(nq, nq);
  for (int i = 0; i < nq; ++i)
    for (int j = 0; j < nq; ++j) b.xi_block(i, j) = -mu.dot(lie.bracket(qv.col(i), qv.col(j)));
  b.psi_block.resize(nq, ni);
  for (int i = 0; i < nq; ++i)
    for (int c = 0; c < ni; ++c) b.psi_block(i, c) = mu.dot(lie.bracket(qv.col(i), lam_a.col(c)));
  b.s_mu_block.resize(ni, ni);
  for (int i = 0; i < ni; ++i)
    for (int j = 0; j < ni; ++j)
      b.s_mu_block(i, j) = -mu.dot(lie.bracket(lam_a.col(i), lam_a.col(j))) +
                           a_part.col(i).dot(m * tube[j]) - a_part.col(j).dot(m * tube[i]);

  b.omega = Mat::Zero(nt, nt);
  b.omega.topLeftCorner(nq, nq) = b.xi_block;
  b.omega.block(0, nq, nq, ni) = -b.psi_block;
  b.omega.block(nq, 0, ni, nq) = b.psi_block.transpose();
  b.omega.block(nq, nq, ni, ni) = b.s_mu_block;
  b.omega.block(nq, nq + ni, ni, ns) = Mat::Identity(ni, ns);
  b.omega.block(nq + ni, nq, ns, ni) = -Mat::Identity(ns, ni);
  b.omega_antisymmetry = max_abs(b.omega + b.omega.transpose());
  if (nt > 0) {
    const Vec sv = Eigen::JacobiSVD<Mat>(b.omega).singularValues();
    b.omega_sigma_ratio = sv(0) > 0 ? sv(sv.size() - 1) / sv(0) : 0.0;
  } else {
    b.omega_sigma_ratio = 1.0;
  }

  // S* basis dual to the slice parts of the Sigma_int basis.
  const Mat cs = s.transpose() * m * a_part;  // slice coordinates of the slice parts
  b.sstar_basis = ns ? Mat(cs.transpose().inverse()) : Mat(0, 0);

  // kappa-tilde columns in chart phase space.
  const Mat& r = split.r.vectors;
  const auto iir = split.inertia_r().ldlt();
  const Mat dii_xp = d_locked_inertia(sys, split.x, a * xp);
  std::vector<Mat> dii_s(ns);
  for (int i = 0; i < ns; ++i) dii_s[i] = d_locked_inertia(sys, split.x, s.col(i));
  const Christoffel gam = christoffel(sys, split.x);
  const Vec p0 = m * (a * split.xi);

  auto kappa = [&](const Vec& lam, const Vec& av, const Vec* tube_a, const Vec& gamma) -> Vec {
    const Vec dq = a * lam + av;
    Vec nu = lie.coadjoint(lam, mu) + dii_xp * lam;
    if (av.norm() > 0.0) nu -= d_locked_inertia(sys, split.x, av) * xp;
    const Vec nur = 0.5 * (r.transpose() * nu);
    Vec alpha = gamma;
    for (int i = 0; i < ns; ++i) {
      alpha(i) -= 0.5 * xp.dot(dii_s[i] * lam);
      if (tube_a) alpha(i) += s.col(i).dot(m * *tube_a);
    }
    Vec k = m * (a * (r * iir.solve(nur))) + m * (s * alpha);
    Vec dp = k;
    for (int kk = 0; kk < n; ++kk)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) dp(kk) += gam(i, kk, j) * dq(i) * p0(j);
    Vec out(2 * n);
    out << dq, dp;
    return out;
  };

  const int d = split.d();
  b.kappa.resize(2 * n, nt);
  for (int i = 0; i < nq; ++i) b.kappa.col(i) = kappa(qv.col(i), Vec::Zero(n), nullptr, Vec::Zero(ns));
  for (int c = 0; c < ni; ++c)
    b.kappa.col(nq + c) = kappa(lam_a.col(c), a_part.col(c), &tube[c], Vec::Zero(ns));
  for (int j = 0; j < ns; ++j)
    b.kappa.col(nq + ni + j) = kappa(Vec::Zero(d), Vec::Zero(n), nullptr, b.sstar_basis.col(j));

  Mat jmat = Mat::Zero(2 * n, 2 * n);
  jmat.topRightCorner(n, n) = Mat::Identity(n, n);
  jmat.bottomLeftCorner(n, n) = -Mat::Identity(n, n);
  b.omega_chart = b.kappa.transpose() * jmat * b.kappa;
  b.omega_chart_residual = nt ? max_abs(b.omega - b.omega_chart) : 0.0;

  // Hessian: closed-form blocks against the phase-space Hessian.
  const Mat hint = restricted_hessian_matrix(sys, split, split.sigma_int.vectors);
  const Mat sstar_metric = b.sstar_basis.transpose() * b.sstar_basis;
  b.hessian_blocks = block_diag({ar.form.matrix, hint, sstar_metric});
  b.hessian_chart = sym(b.kappa.transpose() * phase_hessian(sys, split.x, split.xi, xp) * b.kappa);

  const int sizes[3] = {nq, ni, ns};
  int starts[3] = {0, nq, nq + ni};
  for (int u = 0; u < 3; ++u)
    for (int v = 0; v < 3; ++v) {
      if (sizes[u] == 0 || sizes[v] == 0) continue;
      const Mat blk = b.hessian_chart.block(starts[u], starts[v], sizes[u], sizes[v]);
      if (u == v) {
        b.diagonal_norm = std::max(b.diagonal_norm, max_abs(blk));
        b.diagonal_residual = std::max(
            b.diagonal_residual,
            max_abs(blk - b.hessian_blocks.block(starts[u], starts[v], sizes[u], sizes[v])));
      } else {
        b.offblock_max = std::max(b.offblock_max, max_abs(blk));
      }
    }
  return b;
}

double omega_crosscheck(const ChartedSystem& sys, const SplittingData& split_in, const BlockForms& blocks) {
  SplittingData split = split_in;
  if (!split.wint_built) build_wint(sys, split);
  const LieAlgebra& lie = sys.lie;
  const int nq = blocks.nq, ni = blocks.ni, ns = blocks.ns, nt = nq + ni + ns;
  if (nt == 0) return 0.0;
  const Mat& m = split.metric;
  const Mat& a = split.generators;
  const Mat& r = split.r.vectors;
  const auto iir = split.inertia_r().ldlt();
  const Vec& mu = split.mu;

  // d chi^{xi_perp} from the chart Jacobian of chi; constant coordinate
  // fields commute, so the bracket term drops out.
  const fd::VectorFn chi = [&](const Vec& q) -> Vec { return chi_one_form(sys, q, split.xi_perp); };
  const Mat jac = fd::jacobian(chi, split.x, sys.fd_step(split.x));
  const Mat dchi = jac.transpose() - jac;

  // Elements (eta, dq, beta) for each basis direction.
  struct Elem {
    Vec eta, dq, beta;
  };
  const int d = split.d(), n = split.n();
  std::vector<Elem> e(nt, Elem{Vec::Zero(d), Vec::Zero(n), Vec::Zero(n)});
  for (int i = 0; i < nq; ++i) e[i].eta = split.qmu.vectors.col(i);
  for (int c = 0; c < ni; ++c) e[nq + c].dq = split.sigma_int.vectors.col(c);
  for (int j = 0; j < ns; ++j) e[nq + ni + j].beta = m * (split.slice.vectors * blocks.sstar_basis.col(j));

  // alpha(dq) = II_r^{-1} of the momentum of FL(dq).
  auto alpha = [&](const Vec& dq) -> Vec { return r * iir.solve(r.transpose() * (a.transpose() * (m * dq))); };

  Mat om(nt, nt);
  for (int i = 0; i < nt; ++i)
    for (int j = 0; j < nt; ++j) {
      const Elem& u = e[i];
      const Elem& w = e[j];
      const Vec br = -lie.bracket(u.eta, w.eta) - lie.bracket(u.eta, alpha(w.dq)) +
                     lie.bracket(w.eta, alpha(u.dq));
      om(i, j) = mu.dot(br) + w.beta.dot(u.dq) - u.beta.dot(w.dq) - u.dq.dot(dchi * w.dq);
    }
  return max_abs(om - blocks.omega);
}

StabilityReport full_em_test(const ChartedSystem& sys, const Point& x, const AlgebraVector& xi,
                             const Mat& ip, const OracleOptions& options) {
  // The splitting supplies xi_perp and the expected dimension only.
  const SplittingData split = build_splitting(sys, x, xi, ip);
  const int n = sys.n;
  const int d = sys.group_dim();
  const Mat m = split.metric;
  const Mat a = split.generators;
  const Vec p0 = m * (a * xi);

  // q-derivatives of the momentum components <p0, A(q) e_i>.
  const fd::VectorFn jq = [&](const Vec& q) -> Vec { return sys.generators(q).transpose() * p0; };
  const Mat djq = d ? fd::jacobian(jq, x, sys.fd_step(x)) : Mat(0, n);
  Mat dj(d, 2 * n);
  if (d) {
    dj.leftCols(n) = djq;
    dj.rightCols(n) = a.transpose();
  }
  const double floor = 1e-12 * (1.0 + max_abs(dj));
  const Mat kerj = d ? null_space(dj, kFdRankTol, floor) : Mat(Mat::Identity(2 * n, 2 * n));

  // Cotangent-lifted generators of g_mu at z.
  Mat gz(2 * n, split.gmu.dim());
  for (Eigen::Index i = 0; i < split.gmu.dim(); ++i) {
    const Vec lam = split.gmu.vectors.col(i);
    gz.col(i) << a * lam, -(djq.transpose() * lam);
  }
  const Mat gzb = gz.cols() ? range_basis(gz, kFdRankTol, 1e-12 * (1.0 + max_abs(gz))) : Mat(2 * n, 0);
  Mat vs = gzb.cols() ? Mat(kerj * null_space(gzb.transpose() * kerj, kFdRankTol)) : kerj;
  if (options.complement_seed && gzb.cols() && vs.cols()) {
    std::mt19937 rng(*options.complement_seed);
    std::normal_distribution<double> nd;
    Mat mix(gzb.cols(), vs.cols());
    for (Eigen::Index i = 0; i < mix.size(); ++i) mix.data()[i] = nd(rng);
    vs += gzb * mix;
  }
  const int expected = static_cast<int>(split.qmu.dim() + 2 * split.slice.dim());
  if (vs.cols() != expected) {
    std::ostringstream os;
    os << "full_em_test: dim V_s = " << vs.cols() << " but dim q^mu + 2 dim S = " << expected;
    throw NumericalInconsistency(os.str());
  }
  const Mat hz = phase_hessian(sys, x, xi, split.xi_perp);
  QuadraticForm form(SubspaceBasis(Ambient::Phase, vs), vs.transpose() * hz * vs, "hessian_vs");
  form.noise_floor = fd_noise_floor(max_abs(hz), vs);

  StabilityReport rep;
  rep.route = Route::ORACLE_ONLY;
  rep.dim_check = split.dim_check;
  rep.assumptions = split.assumptions;
  rep.block_spectra["hessian_vs"] = spectrum(form);
  const Inertia in = form.inertia(options.definiteness_tol);
  rep.residuals["n_plus"] = in.positive;
  rep.residuals["n_minus"] = in.negative;
  rep.residuals["n_zero"] = in.zero;
  rep.residuals["dim_vs"] = static_cast<double>(vs.cols());
  rep.residuals["dim_ker_dj"] = static_cast<double>(kerj.cols());
  rep.verdict = form.definite(options.definiteness_tol) ? Verdict::GMU_STABLE : Verdict::INCONCLUSIVE;
  return rep;
}

IsotypicResult isotypic_subblocks(const ChartedSystem& sys, const SplittingData& split,
                                  const std::vector<AlgebraVector>& generators, unsigned seed) {
  IsotypicResult res;
  const Eigen::Index k = split.sigma.dim();
  if (k == 0) return res;
  const Mat so = orthonormalize(split.sigma.vectors, split.metric);
  const Mat b = restricted_hessian_matrix(sys, split, so);

  std::vector<Mat> acts;
  for (const auto& g : generators) {
    if ((split.generators * g).norm() > 1e-8 * (1.0 + split.generators.norm() * g.norm())) {
      res.applicable = false;  // generator does not fix x
      return res;
    }
    const Mat l = linearized_isotropy_action(sys, split.x, g);
    const Mat lo = so.transpose() * split.metric * l * so;
    res.invariance_residual =
        std::max(res.invariance_residual, max_abs(l * so - so * lo) / (1.0 + max_abs(l)));
    acts.push_back(lo);
  }
  for (std::size_t i = 0; i < acts.size(); ++i)
    for (std::size_t j = i + 1; j < acts.size(); ++j)
      res.commutator_max = std::max(res.commutator_max, max_abs(acts[i] * acts[j] - acts[j] * acts[i]));
  double scale = 1.0;
  for (const auto& l : acts) scale = std::max(scale, max_abs(l));
  if (res.commutator_max > 1e-6 * scale * scale) {
    res.applicable = false;
    return res;
  }

  Mat kmat = Mat::Zero(k, k);
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> ud(0.5, 1.5);
  for (const auto& l : acts) kmat += ud(rng) * l;
  Eigen::SelfAdjointEigenSolver<Mat> es(sym(kmat * kmat));
  const Vec ev = es.eigenvalues();  // -omega^2, ascending
  const double tol = 1e-6 * (1.0 + ev.cwiseAbs().maxCoeff());
  std::vector<std::vector<Eigen::Index>> groups;
  for (Eigen::Index i = 0; i < k; ++i) {
    if (groups.empty() || std::abs(ev(i) - ev(groups.back().back())) > tol) groups.emplace_back();
    groups.back().push_back(i);
  }
  std::vector<Mat> qs;
  for (const auto& g : groups) {
    Mat q(k, g.size());
    for (std::size_t c = 0; c < g.size(); ++c) q.col(c) = es.eigenvectors().col(g[c]);
    qs.push_back(q);
    const double w = std::sqrt(std::max(0.0, -ev(g.front())));
    res.frequencies.push_back(w);
    res.blocks.emplace_back(SubspaceBasis(Ambient::Tangent, so * q), q.transpose() * b * q, "isotypic");
  }
  for (std::size_t i = 0; i < qs.size(); ++i)
    for (std::size_t j = 0; j < qs.size(); ++j)
      if (i != j) res.cross_block_max = std::max(res.cross_block_max, max_abs(qs[i].transpose() * b * qs[j]));
  return res;
}

std::optional<double> regular_case_amended_check(const ChartedSystem& sys, const SplittingData& split) {
  if (!split.h.empty()) return std::nullopt;
  const Mat& sig = split.sigma.vectors;
  if (sig.cols() == 0) return 0.0;
  const Vec mu = split.mu;
  const fd::ScalarFn vmu = [&](const Vec& q) {
    const Mat ii = locked_inertia(sys, q);
    return sys.potential(q) + 0.5 * mu.dot(ii.ldlt().solve(mu));
  };
  const Mat lhs = sym(sig.transpose() * fd::hessian(vmu, split.x, sys.fd_step2(split.x)) * sig);
  const Mat rhs = restricted_hessian_matrix(sys, split, sig);
  const double scale = std::max({max_abs(lhs), max_abs(rhs), 1e-300});
  return max_abs(lhs - rhs) / scale;
}

double IdentitySides::relative_error() const {
  const double den = std::max({std::abs(lhs), std::abs(rhs), scale});
  return den > 0.0 ? std::abs(lhs - rhs) / den : 0.0;
}

namespace {

double natural_scale(const SplittingData& split, double n1, double n2, double n3) {
  const double an = std::max(1.0, split.generators.norm());
  return 1e-3 * split.metric.norm() * an * an * an * n1 * n2 * n3;
}

Vec nabla_generator(const ChartedSystem& sys, const SplittingData& split, const AlgebraVector& field_xi,
                    const TangentVector& along) {
  return covariant_derivative_of_field(
      sys, split.x, [&](const Point& q) -> Vec { return sys.generators(q) * field_xi; }, along);
}

}  // namespace

IdentitySides covariant_item_i(const ChartedSystem& sys, const SplittingData& split,
                               const AlgebraVector& xi_i, const AlgebraVector& xi_j,
                               const AlgebraVector& lam) {
  const Mat& a = split.generators;
  const Vec xir = split.r_part(xi_i);
  IdentitySides s;
  s.lhs = nabla_generator(sys, split, xi_j, a * xi_i).dot(split.metric * (a * lam));
  s.rhs = 0.5 * (xi_j.dot(d_locked_inertia(sys, split.x, a * xir) * lam) -
                 xir.dot(split.inertia * sys.lie.bracket(xi_j, lam)));
  s.scale = natural_scale(split, xi_i.norm(), xi_j.norm(), lam.norm());
  return s;
}

IdentitySides covariant_item_ii(const ChartedSystem& sys, const SplittingData& split,
                                const AlgebraVector& xi_i, const AlgebraVector& xi_j,
                                const TangentVector& w) {
  const Mat& a = split.generators;
  IdentitySides s;
  s.lhs = nabla_generator(sys, split, xi_j, a * xi_i).dot(split.metric * w);
  s.rhs = -0.5 * split.r_part(xi_i).dot(d_locked_inertia(sys, split.x, w) * xi_j);
  s.scale = natural_scale(split, xi_i.norm(), xi_j.norm(), w.norm());
  return s;
}

IdentitySides covariant_item_iii(const ChartedSystem& sys, const SplittingData& split,
                                 const AlgebraVector& xi, const TangentVector& v,
                                 const AlgebraVector& lam) {
  const Vec xir = split.r_part(xi);
  IdentitySides s;
  s.lhs = tube_extension_derivative(sys, split.x, v, xir).dot(split.metric * (split.generators * lam));
  s.rhs = 0.5 * xir.dot(d_locked_inertia(sys, split.x, v) * lam);
  s.scale = natural_scale(split, xi.norm(), v.norm(), lam.norm());
  return s;
}

IdentitySides covariant_item_iv(const ChartedSystem& sys, const SplittingData& split,
                                const AlgebraVector& xi, const TangentVector& v,
                                const AlgebraVector& lam) {
  IdentitySides s;
  s.lhs = nabla_generator(sys, split, xi, v).dot(split.metric * (split.generators * lam));
  s.rhs = 0.5 * xi.dot(d_locked_inertia(sys, split.x, v) * lam);
  s.scale = natural_scale(split, xi.norm(), v.norm(), lam.norm());
  return s;
}

IdentitySides covariant_item_v(const ChartedSystem& sys, const SplittingData& split,
                               const AlgebraVector& xi, const TangentVector& v,
                               const TangentVector& w) {
  IdentitySides s;
  const Vec mw = split.metric * w;
  s.lhs = nabla_generator(sys, split, xi, v).dot(mw);
  s.rhs = tube_extension_derivative(sys, split.x, v, split.r_part(xi)).dot(mw);
  if (!split.h.empty()) {
    const Vec xih = split.h_part(xi);
    s.rhs += (linearized_isotropy_action(sys, split.x, xih) * v).dot(mw);
  }
  s.scale = natural_scale(split, xi.norm(), v.norm(), w.norm());
  return s;
}

}  // namespace remstab
