#include "remstab/lie_algebra.hpp"

#include <cmath>
#include <sstream>

namespace remstab {

LieAlgebra::LieAlgebra(int dim, std::string name)
    : dim_(dim), name_(std::move(name)), c_(static_cast<std::size_t>(dim) * dim * dim, 0.0) {
  if (dim < 0) throw ContractViolation("LieAlgebra: negative dimension");
}

LieAlgebra::LieAlgebra(int dim, const std::vector<StructureEntry>& entries, std::string name)
    : LieAlgebra(dim, std::move(name)) {
  for (const auto& e : entries) {
    if (e.i < 0 || e.j < 0 || e.k < 0 || e.i >= dim || e.j >= dim || e.k >= dim) {
      std::ostringstream os;
      os << "LieAlgebra: structure index out of range (" << e.i << ", " << e.j << ", " << e.k
         << ") for dim " << dim;
      throw ContractViolation(os.str());
    }
    c_[index(e.i, e.j, e.k)] = e.value;
  }
  if (antisymmetry_defect() > 1e-12)
    throw ContractViolation("LieAlgebra: structure constants are not antisymmetric");
  if (jacobi_defect() > 1e-12)
    throw ContractViolation("LieAlgebra: Jacobi identity fails");
}

LieAlgebra LieAlgebra::so3() {
  std::vector<StructureEntry> e;
  const int cyc[3][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};
  for (const auto& t : cyc) {
    e.push_back({t[0], t[1], t[2], 1.0});
    e.push_back({t[1], t[0], t[2], -1.0});
  }
  return LieAlgebra(3, e, "so(3)");
}

LieAlgebra LieAlgebra::direct_sum(const LieAlgebra& a, const LieAlgebra& b) {
  std::vector<StructureEntry> e = a.entries();
  for (auto s : b.entries()) {
    s.i += a.dim();
    s.j += a.dim();
    s.k += a.dim();
    e.push_back(s);
  }
  return LieAlgebra(a.dim() + b.dim(), e, a.name() + "+" + b.name());
}

bool LieAlgebra::is_abelian() const {
  for (double v : c_)
    if (v != 0.0) return false;
  return true;
}

void LieAlgebra::require_dim(const Vec& v, const char* what) const {
  if (v.size() != dim_) {
    std::ostringstream os;
    os << what << ": expected length " << dim_ << ", got " << v.size();
    throw ContractViolation(os.str());
  }
}

AlgebraVector LieAlgebra::bracket(const AlgebraVector& x, const AlgebraVector& y) const {
  require_dim(x, "bracket");
  require_dim(y, "bracket");
  Vec out = Vec::Zero(dim_);
  for (int i = 0; i < dim_; ++i) {
    if (x(i) == 0.0) continue;
    for (int j = 0; j < dim_; ++j) {
      const double w = x(i) * y(j);
      if (w == 0.0) continue;
      for (int k = 0; k < dim_; ++k) out(k) += w * c(i, j, k);
    }
  }
  return out;
}

CoalgebraVector LieAlgebra::coadjoint(const AlgebraVector& lam, const CoalgebraVector& mu) const {
  require_dim(lam, "coadjoint");
  require_dim(mu, "coadjoint");
  // (ad*_lam mu)_j = <mu, [lam, e_j]> = sum_{i,k} lam_i mu_k c[i][j][k]
  Vec out = Vec::Zero(dim_);
  for (int i = 0; i < dim_; ++i) {
    if (lam(i) == 0.0) continue;
    for (int j = 0; j < dim_; ++j)
      for (int k = 0; k < dim_; ++k) out(j) += lam(i) * mu(k) * c(i, j, k);
  }
  return out;
}

Mat LieAlgebra::ad_matrix(const AlgebraVector& x) const {
  require_dim(x, "ad_matrix");
  Mat ad = Mat::Zero(dim_, dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      for (int k = 0; k < dim_; ++k) ad(k, j) += x(i) * c(i, j, k);
  return ad;
}

Mat LieAlgebra::coadjoint_orbit_matrix(const CoalgebraVector& mu) const {
  Mat l(dim_, dim_);
  for (int i = 0; i < dim_; ++i) l.col(i) = coadjoint(Vec::Unit(dim_, i), mu);
  return l;
}

double LieAlgebra::antisymmetry_defect() const {
  double worst = 0.0;
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      for (int k = 0; k < dim_; ++k)
        worst = std::max(worst, std::abs(c(i, j, k) + c(j, i, k)));
  return worst;
}

double LieAlgebra::jacobi_defect() const {
  double worst = 0.0;
  for (int a = 0; a < dim_; ++a)
    for (int b = 0; b < dim_; ++b)
      for (int cc = 0; cc < dim_; ++cc)
        for (int m = 0; m < dim_; ++m) {
          // [e_a,[e_b,e_c]] + [e_b,[e_c,e_a]] + [e_c,[e_a,e_b]], component m
          double s = 0.0;
          for (int l = 0; l < dim_; ++l)
            s += c(b, cc, l) * c(a, l, m) + c(cc, a, l) * c(b, l, m) + c(a, b, l) * c(cc, l, m);
          worst = std::max(worst, std::abs(s));
        }
  return worst;
}

std::vector<StructureEntry> LieAlgebra::entries() const {
  std::vector<StructureEntry> e;
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      for (int k = 0; k < dim_; ++k)
        if (c(i, j, k) != 0.0) e.push_back({i, j, k, c(i, j, k)});
  return e;
}

SubspaceBasis momentum_isotropy_algebra(const LieAlgebra& alg, const CoalgebraVector& mu,
                                        double tol) {
  if (!(tol > 0.0)) throw ContractViolation("momentum_isotropy_algebra: tol must be positive");
  if (mu.size() != alg.dim())
    throw ContractViolation("momentum_isotropy_algebra: mu has wrong length");
  const Mat l = alg.coadjoint_orbit_matrix(mu);
  // A zero matrix has sigma_max = 0; then every direction is isotropic.
  return SubspaceBasis(Ambient::Algebra, null_space(l, tol), tol);
}

Mat invariant_inner_product_family(const LieAlgebra& alg, const std::vector<double>& params) {
  const int d = alg.dim();
  Mat g = Mat::Identity(d, d);
  const std::size_t packed = static_cast<std::size_t>(d) * (d + 1) / 2;
  if (params.size() <= static_cast<std::size_t>(d)) {
    for (std::size_t i = 0; i < params.size(); ++i) g(i, i) = params[i];
  } else if (params.size() == packed) {
    std::size_t at = 0;
    for (int i = 0; i < d; ++i)
      for (int j = i; j < d; ++j) g(i, j) = g(j, i) = params[at++];
  } else {
    std::ostringstream os;
    os << "inner product: expected at most " << d << " diagonal or " << packed
       << " packed parameters, got " << params.size();
    throw ContractViolation(os.str());
  }
  const Vec ev = symmetric_eigenvalues(g);
  if (d > 0 && !(ev(0) > 0.0)) {
    std::ostringstream os;
    os << "inner product is not positive definite (smallest eigenvalue " << ev(0) << ")";
    throw ContractViolation(os.str());
  }
  return g;
}

}  // namespace remstab
