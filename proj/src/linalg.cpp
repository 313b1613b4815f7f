#include "remstab/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace remstab {

const char* to_string(Ambient a) {
  switch (a) {
    case Ambient::Algebra:
      return "algebra";
    case Ambient::Coalgebra:
      return "coalgebra";
    case Ambient::Tangent:
      return "tangent";
    case Ambient::Phase:
      return "phase";
  }
  return "unknown";
}

bool SubspaceBasis::is_independent() const {
  if (vectors.cols() == 0) return true;
  if (vectors.cols() > vectors.rows()) return false;
  Eigen::JacobiSVD<Mat> svd(vectors);
  const Vec& s = svd.singularValues();
  return s(s.size() - 1) > gram_tol * s(0);
}

namespace {

double cutoff(const Vec& s, double rel_tol, double abs_floor) {
  const double smax = s.size() > 0 ? s(0) : 0.0;
  return std::max(rel_tol * smax, abs_floor);
}

}  // namespace

Eigen::Index numerical_rank(const Mat& a, double rel_tol, double abs_floor) {
  if (a.size() == 0) return 0;
  Eigen::JacobiSVD<Mat> svd(a);
  const Vec& s = svd.singularValues();
  const double c = cutoff(s, rel_tol, abs_floor);
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > c) ++r;
  return r;
}

Mat null_space(const Mat& a, double rel_tol, double abs_floor) {
  const Eigen::Index n = a.cols();
  if (n == 0) return Mat(0, 0);
  if (a.rows() == 0) return Mat::Identity(n, n);
  // Pad to square so that ComputeFullV exposes the whole right space.
  Mat padded = Mat::Zero(std::max(a.rows(), n), n);
  padded.topRows(a.rows()) = a;
  Eigen::JacobiSVD<Mat> svd(padded, Eigen::ComputeFullV);
  const Vec& s = svd.singularValues();
  const double c = cutoff(s, rel_tol, abs_floor);
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > c) ++r;
  return svd.matrixV().rightCols(n - r);
}

Mat range_basis(const Mat& a, double rel_tol, double abs_floor) {
  if (a.cols() == 0 || a.rows() == 0) return Mat(a.rows(), 0);
  Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeThinU);
  const Vec& s = svd.singularValues();
  const double c = cutoff(s, rel_tol, abs_floor);
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > c) ++r;
  return svd.matrixU().leftCols(r);
}

Mat intersect(const Mat& u, const Mat& w, double rel_tol) {
  const Eigen::Index n = u.rows();
  if (u.cols() == 0 || w.cols() == 0) return Mat(n, 0);
  const Mat qu = range_basis(u, rel_tol);
  const Mat qw = range_basis(w, rel_tol);
  if (qu.cols() == 0 || qw.cols() == 0) return Mat(n, 0);
  // Vectors qu*a whose component outside span(qw) vanishes.
  const Mat outside = qu - qw * (qw.transpose() * qu);
  // Singular values of `outside` are sines of principal angles in [0, 1].
  const Mat coeffs = null_space(outside, 0.0, std::sqrt(rel_tol));
  if (coeffs.cols() == 0) return Mat(n, 0);
  return range_basis(qu * coeffs, rel_tol);
}

Vec principal_angles(const Mat& u, const Mat& w) {
  if (u.cols() == 0 || w.cols() == 0) return Vec(0);
  const Mat qu = range_basis(u);
  const Mat qw = range_basis(w);
  if (qu.cols() == 0 || qw.cols() == 0) return Vec(0);
  Eigen::JacobiSVD<Mat> svd(qu.transpose() * qw);
  Vec angles = svd.singularValues().unaryExpr(
      [](double c) { return std::acos(std::clamp(c, -1.0, 1.0)); });
  std::sort(angles.data(), angles.data() + angles.size());
  // acos loses accuracy near zero; use sines of the residual there.
  const Mat resid = qu - qw * (qw.transpose() * qu);
  Eigen::JacobiSVD<Mat> svd_sin(resid);
  Vec sines = svd_sin.singularValues();
  std::sort(sines.data(), sines.data() + sines.size());
  for (Eigen::Index i = 0; i < angles.size() && i < sines.size(); ++i)
    if (angles(i) < 0.1) angles(i) = std::asin(std::clamp(sines(i), 0.0, 1.0));
  return angles;
}

bool same_subspace(const Mat& u, const Mat& w, double tol) {
  const Eigen::Index ru = numerical_rank(u);
  const Eigen::Index rw = numerical_rank(w);
  if (ru != rw) return false;
  if (ru == 0) return true;
  const Vec a = principal_angles(u, w);
  return a.size() == ru && a.maxCoeff() < tol;
}

Mat orthonormalize(const Mat& v, const Mat& g) {
  Mat out = v;
  for (Eigen::Index j = 0; j < out.cols(); ++j) {
    // Two passes of modified Gram-Schmidt.
    for (int pass = 0; pass < 2; ++pass)
      for (Eigen::Index i = 0; i < j; ++i) {
        const double c = out.col(i).dot(g * out.col(j));
        out.col(j) -= c * out.col(i);
      }
    const double nrm = std::sqrt(out.col(j).dot(g * out.col(j)));
    if (!(nrm > 0.0)) throw NumericalInconsistency("orthonormalize: dependent vectors");
    out.col(j) /= nrm;
  }
  return out;
}

Vec symmetric_eigenvalues(const Mat& a) {
  if (a.rows() == 0) return Vec(0);
  Eigen::SelfAdjointEigenSolver<Mat> es(sym(a), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

Inertia inertia_of(const Vec& ev, double tol) {
  Inertia in;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) > tol)
      ++in.positive;
    else if (ev(i) < -tol)
      ++in.negative;
    else
      ++in.zero;
  }
  return in;
}

double definiteness_band(const Vec& ev, double rel, double floor) {
  const double m = ev.size() ? ev.cwiseAbs().maxCoeff() : 0.0;
  return std::max(rel * m, floor);
}

double max_abs(const Mat& a) { return a.size() ? a.cwiseAbs().maxCoeff() : 0.0; }

std::vector<double> to_std(const Vec& v) { return {v.data(), v.data() + v.size()}; }

}  // namespace remstab
