#include "remstab/splitting.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace remstab {

namespace {

Mat hcat(const Mat& a, const Mat& b) {
  Mat out(std::max(a.rows(), b.rows()), a.cols() + b.cols());
  if (a.cols()) out.leftCols(a.cols()) = a;
  if (b.cols()) out.rightCols(b.cols()) = b;
  return out;
}

void check_ip(const Mat& ip, int d) {
  if (ip.rows() != d || ip.cols() != d) throw ContractViolation("inner product has wrong shape");
  if (max_abs(ip - ip.transpose()) > 1e-12 * (1.0 + max_abs(ip)))
    throw ContractViolation("inner product is not symmetric");
  if (d > 0 && !(symmetric_eigenvalues(ip)(0) > 0.0))
    throw ContractViolation("inner product is not positive definite");
}

}  // namespace

Vec SplittingData::r_coords(const AlgebraVector& v) const {
  return (hr_inverse * v).tail(r.dim());
}

Vec SplittingData::h_coords(const AlgebraVector& v) const {
  return (hr_inverse * v).head(h.dim());
}

SplittingData build_splitting(const ChartedSystem& sys, const Point& x, const AlgebraVector& xi,
                              const Mat& ip, const SplittingOptions& options) {
  const int d = sys.group_dim();
  const int n = sys.n;
  if (x.size() != n) throw ContractViolation("build_splitting: point has wrong dimension");
  if (xi.size() != d) throw ContractViolation("build_splitting: velocity has wrong dimension");
  check_ip(ip, d);
  if (options.require_re) require_relative_equilibrium(sys, x, xi);

  SplittingData s;
  s.x = x;
  s.xi = xi;
  s.inner_product = ip;
  s.metric = sys.checked_metric(x);
  s.generators = sys.generators(x);
  s.inertia = locked_inertia(sys, x);
  const Mat& a = s.generators;
  const Mat& m = s.metric;
  const Mat& ii = s.inertia;
  const LieAlgebra& lie = sys.lie;

  s.h = SubspaceBasis(Ambient::Algebra, null_space(ii, kRankTol));
  s.mu = ii * xi;

  double cmax = 0.0;
  for (const auto& e : lie.entries()) cmax = std::max(cmax, std::abs(e.value));
  s.xi_in_gmu_residual = lie.coadjoint(xi, s.mu).norm();
  if (options.require_re && s.xi_in_gmu_residual > 1e-8 * cmax * xi.norm() * s.mu.norm() + 1e-14) {
    std::ostringstream os;
    os << "velocity does not lie in the momentum isotropy algebra (residual "
       << s.xi_in_gmu_residual << ")";
    throw NotRelativeEquilibrium(os.str());
  }

  s.gmu = momentum_isotropy_algebra(lie, s.mu);
  s.gpx = SubspaceBasis(Ambient::Algebra, intersect(s.h.vectors, s.gmu.vectors));

  // p: ip-orthogonal complement of g_px inside g_mu.
  Mat p;
  if (s.gpx.empty()) {
    p = s.gmu.vectors;
  } else {
    const Mat& b = s.gmu.vectors;
    p = b * null_space(s.gpx.vectors.transpose() * ip * b, kRankTol);
  }
  if (p.cols()) p = orthonormalize(p, ip);
  s.p = SubspaceBasis(Ambient::Algebra, p);
  s.xi_perp = p.cols() ? Vec(p * (p.transpose() * ip * xi)) : Vec(Vec::Zero(d));

  // t: complement of h + p, then II-orthogonal to p.
  const Mat hp = hcat(s.h.vectors, p);
  Mat t = hp.cols() ? null_space(hp.transpose(), kRankTol) : Mat(Mat::Identity(d, d));
  if (options.complement_seed && t.cols() && hp.cols()) {
    std::mt19937 rng(*options.complement_seed);
    std::normal_distribution<double> nd;
    Mat mix(hp.cols(), t.cols());
    for (Eigen::Index i = 0; i < mix.size(); ++i) mix.data()[i] = 0.5 * nd(rng);
    t += hp * mix;
  }
  if (p.cols() && t.cols()) {
    const Mat pip = p.transpose() * ii * p;
    t -= p * pip.ldlt().solve(p.transpose() * ii * t);
  }
  if (t.cols()) t = orthonormalize(t, Mat::Identity(d, d));
  s.t = SubspaceBasis(Ambient::Algebra, t);
  s.r = SubspaceBasis(Ambient::Algebra, hcat(p, t));

  const Mat hr = hcat(s.h.vectors, s.r.vectors);
  if (hr.cols() != d || numerical_rank(hr) != d)
    throw NumericalInconsistency("build_splitting: h and r do not span the algebra");
  s.hr_inverse = d ? Mat(hr.inverse()) : Mat(0, 0);

  // Linear slice: M-orthogonal complement of the orbit directions.
  Mat slice = d ? null_space(a.transpose() * m, kRankTol) : Mat(Mat::Identity(n, n));
  if (slice.cols()) slice = orthonormalize(slice, m);
  s.slice = SubspaceBasis(Ambient::Tangent, slice);
  s.dim_check = n - d + static_cast<int>(s.h.dim());
  if (s.slice.dim() != s.dim_check) {
    std::ostringstream os;
    os << "build_splitting: slice dimension " << s.slice.dim() << " differs from n - d + dim h = "
       << s.dim_check;
    throw NumericalInconsistency(os.str());
  }

  // q^mu: lambda in t with ad*_lambda mu annihilating h.
  Mat qmu = t;
  if (!s.h.empty() && t.cols()) {
    Mat k(s.h.dim(), t.cols());
    for (Eigen::Index j = 0; j < t.cols(); ++j)
      k.col(j) = s.h.vectors.transpose() * lie.coadjoint(t.col(j), s.mu);
    qmu = t * null_space(k, kRankTol, 1e-12 * (1.0 + s.mu.norm()));
  }
  s.qmu = SubspaceBasis(Ambient::Algebra, qmu);
  const Mat rig = a * qmu;
  s.sigma_rig = SubspaceBasis(Ambient::Tangent, rig);
  s.sigma = SubspaceBasis(Ambient::Tangent, hcat(rig, slice));

  // Infinitesimal invariance of the inner product under g_px.
  for (Eigen::Index j = 0; j < s.gpx.dim(); ++j) {
    const Mat ad = lie.ad_matrix(s.gpx.vectors.col(j));
    s.ip_invariance_defect = std::max(s.ip_invariance_defect, max_abs(ad.transpose() * ip + ip * ad));
  }
  if (s.ip_invariance_defect > 1e-9 * (1.0 + max_abs(ip))) {
    std::ostringstream os;
    os << "WARNING inner product not invariant under the residual algebra (defect "
       << s.ip_invariance_defect << ")";
    s.assumptions.push_back(os.str());
  } else if (lie.is_abelian()) {
    s.assumptions.push_back("inner-product invariance automatic (abelian algebra)");
  } else {
    s.assumptions.push_back("inner-product invariance checked at the algebra level only");
  }
  s.assumptions.push_back("splitting invariance checked for the identity component only");
  return s;
}

Mat dii_xi_perp_on_sigma(const ChartedSystem& sys, const SplittingData& split) {
  const Mat& sig = split.sigma.vectors;
  Mat out(split.d(), sig.cols());
  for (Eigen::Index i = 0; i < sig.cols(); ++i)
    out.col(i) = d_locked_inertia(sys, split.x, sig.col(i)) * split.xi_perp;
  return out;
}

namespace {

double pairing_scale(const SplittingData& split) {
  double col = 0.0;
  for (Eigen::Index i = 0; i < split.sigma.dim(); ++i)
    col = std::max(col, split.sigma.vectors.col(i).norm());
  return std::max(1.0, split.inertia.norm()) * split.xi_perp.norm() * std::max(col, 1.0) /
         (1.0 + split.x.norm());
}

}  // namespace

void build_wint(const ChartedSystem& sys, SplittingData& split) {
  const int ns = static_cast<int>(split.sigma.dim());
  const int nq = static_cast<int>(split.qmu.dim());
  Mat coords;
  if (ns == 0) {
    coords = Mat(0, 0);
  } else if (split.t.empty() || split.xi_perp.norm() == 0.0) {
    coords = Mat::Identity(ns, ns);
  } else {
    const Mat w = split.t.vectors.transpose() * dii_xi_perp_on_sigma(sys, split);
    coords = null_space(w, kFdRankTol, kFdRankTol * pairing_scale(split));
  }
  split.wint_coords = coords;
  split.wint_lambda = split.qmu.vectors * coords.topRows(nq);
  split.wint_b = split.slice.vectors * coords.bottomRows(ns - nq);
  split.sigma_int = SubspaceBasis(Ambient::Tangent, split.sigma.vectors * coords);
  split.wint_built = true;
}

double h_pairing_defect(const ChartedSystem& sys, const SplittingData& split) {
  if (split.h.empty() || split.sigma.empty() || split.xi_perp.norm() == 0.0) return 0.0;
  const Mat hp = split.h.vectors.transpose() * dii_xi_perp_on_sigma(sys, split);
  return max_abs(hp) / pairing_scale(split);
}

SigmaDecompositionReport check_sigma_decomposition(const SplittingData& split,
                                                   bool arnold_nondegenerate) {
  SigmaDecompositionReport rep;
  rep.dim_sigma = static_cast<int>(split.sigma.dim());
  rep.dim_rig = static_cast<int>(split.sigma_rig.dim());
  rep.dim_int = static_cast<int>(split.sigma_int.dim());
  if (!arnold_nondegenerate || !split.wint_built) return rep;
  rep.applicable = true;
  rep.principal_angles = principal_angles(split.sigma_rig.vectors, split.sigma_int.vectors);
  const Mat both = hcat(split.sigma_rig.vectors, split.sigma_int.vectors);
  const Eigen::Index rank = both.cols() ? numerical_rank(both, kFdRankTol) : 0;
  rep.direct_sum = rank == rep.dim_rig + rep.dim_int && rank == rep.dim_sigma;
  return rep;
}

}  // namespace remstab
