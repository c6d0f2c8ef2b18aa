#include "qwspec/subspace.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <string>

#include "qwspec/errors.hpp"
#include "svd.hpp"

namespace qwspec {
namespace {

constexpr double kOrthonormalityTol = 1e-12;

using detail::Svd;

Svd svd_of(const CMatrix& mtx, bool want_u, bool want_v) { return detail::svd(mtx, want_u, want_v); }

void require_same_ambient(const Subspace& a, const Subspace& b, const char* op) {
  if (a.ambient_dim() != b.ambient_dim()) {
    throw Error(ErrorKind::DimensionMismatch,
                std::string(op) + ": ambient dimensions " + std::to_string(a.ambient_dim()) +
                    " and " + std::to_string(b.ambient_dim()) + " differ");
  }
}

// Number of singular values above the threshold rule; values are sorted
// descending by LAPACK.
Index numerical_rank(const Eigen::VectorXd& sigma, double rel_tol) {
  if (sigma.size() == 0) return 0;
  const double smax = sigma(0);
  const double cut = smax > 0.0 ? rel_tol * smax : rel_tol;
  Index r = 0;
  while (r < sigma.size() && sigma(r) > cut) ++r;
  return r;
}

// Kernel with an absolute threshold on sigma.
CMatrix kernel_basis_abs(const CMatrix& mtx, double abs_tol) {
  const Index cols = mtx.cols();
  if (cols == 0) return CMatrix(0, 0);
  if (mtx.rows() == 0) return CMatrix::Identity(cols, cols);
  const Svd svd = svd_of(mtx, false, true);
  Index r = 0;
  while (r < svd.sigma.size() && svd.sigma(r) > abs_tol) ++r;
  return svd.v.rightCols(cols - r);
}

}  // namespace

Subspace::Subspace(CMatrix basis, double rank_tol) : basis_(std::move(basis)), rank_tol_(rank_tol) {
  if (basis_.cols() > basis_.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "subspace basis has more columns than rows");
  }
  if (basis_.cols() > 0) {
    const double defect =
        (basis_.adjoint() * basis_ - CMatrix::Identity(basis_.cols(), basis_.cols())).norm();
    if (defect > kOrthonormalityTol * static_cast<double>(std::max<Index>(basis_.rows(), 1))) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.3e", defect);
      throw Error(ErrorKind::NumericalError, std::string("subspace basis is not orthonormal (defect ") + buf + ")");
    }
  }
}

Subspace Subspace::zero(Index ambient_dim, double rank_tol) {
  return Subspace(CMatrix(ambient_dim, 0), rank_tol);
}

Subspace Subspace::full(Index ambient_dim, double rank_tol) {
  return Subspace(CMatrix::Identity(ambient_dim, ambient_dim), rank_tol);
}

double Subspace::distance_of(const CVector& v) const {
  if (v.size() != ambient_dim()) {
    throw Error(ErrorKind::DimensionMismatch, "vector length differs from ambient dimension");
  }
  return (v - basis_ * (basis_.adjoint() * v)).norm();
}

double default_rank_tol(Index rows, Index cols) {
  return static_cast<double>(std::max<Index>({rows, cols, 1})) *
         std::numeric_limits<double>::epsilon();
}

Subspace kernel(const CMatrix& mtx, std::optional<double> rank_tol) {
  const double tol = rank_tol.value_or(default_rank_tol(mtx.rows(), mtx.cols()));
  const Index cols = mtx.cols();
  if (mtx.rows() == 0 || cols == 0) return Subspace::full(cols, tol);
  const Svd svd = svd_of(mtx, false, true);
  const Index r = numerical_rank(svd.sigma, tol);
  return Subspace(svd.v.rightCols(cols - r), tol);
}

Subspace image(const CMatrix& mtx, std::optional<double> rank_tol) {
  const double tol = rank_tol.value_or(default_rank_tol(mtx.rows(), mtx.cols()));
  if (mtx.rows() == 0 || mtx.cols() == 0) return Subspace::zero(mtx.rows(), tol);
  const Svd svd = svd_of(mtx, true, false);
  const Index r = numerical_rank(svd.sigma, tol);
  return Subspace(svd.u.leftCols(r), tol);
}

Subspace span_of(const CMatrix& vectors, std::optional<double> rank_tol) {
  return image(vectors, rank_tol);
}

GeneralizedKernel generalized_kernel(const CMatrix& mtx, int power, std::optional<double> rank_tol) {
  if (mtx.rows() != mtx.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "generalized_kernel needs a square matrix");
  }
  if (power < 1) throw Error(ErrorKind::DomainError, "generalized_kernel power must be >= 1");
  const Index d = mtx.rows();
  bool capped = false;
  if (d > 0 && power > d) {
    power = static_cast<int>(d);
    capped = true;
  }
  CMatrix p = mtx;
  for (int i = 1; i < power; ++i) p = p * mtx;
  Subspace space = kernel(p, rank_tol);
  const Index next = kernel(p * mtx, rank_tol).dim();
  const bool stabilized = next == space.dim();
  return {std::move(space), power, capped, next, stabilized};
}

Subspace intersect(const Subspace& a, const Subspace& b, double angle_tol) {
  require_same_ambient(a, b, "intersect");
  const double tol = std::max(a.rank_tol(), b.rank_tol());
  if (a.dim() == 0 || b.dim() == 0) return Subspace::zero(a.ambient_dim(), tol);
  // Coefficients c with (I - P_B) A c = 0; singular values of (I - P_B) A are
  // the sines of the principal angles between A and B.
  const CMatrix residual = a.basis() - b.basis() * (b.basis().adjoint() * a.basis());
  const CMatrix coeff = kernel_basis_abs(residual, angle_tol);
  if (coeff.cols() == 0) return Subspace::zero(a.ambient_dim(), tol);
  return Subspace(span_of(a.basis() * coeff).basis(), tol);
}

Subspace orthogonal_complement(const Subspace& a) {
  if (a.dim() == 0) return Subspace::full(a.ambient_dim(), a.rank_tol());
  return Subspace(kernel_basis_abs(a.basis().adjoint(), 0.5), a.rank_tol());
}

Subspace complement_within(const Subspace& inner, const Subspace& outer, double angle_tol) {
  require_same_ambient(inner, outer, "complement_within");
  if (outer.dim() == 0 || inner.dim() == 0) return outer;
  // Coefficients c with inner^* Q c = 0 for Q the outer basis.
  const CMatrix overlap = inner.basis().adjoint() * outer.basis();
  const CMatrix coeff = kernel_basis_abs(overlap, angle_tol);
  if (coeff.cols() == 0) return Subspace::zero(outer.ambient_dim(), outer.rank_tol());
  return Subspace(span_of(outer.basis() * coeff).basis(), outer.rank_tol());
}

Subspace sum(const Subspace& a, const Subspace& b) {
  require_same_ambient(a, b, "sum");
  CMatrix both(a.ambient_dim(), a.dim() + b.dim());
  both << a.basis(), b.basis();
  if (both.cols() == 0) return Subspace::zero(a.ambient_dim(), a.rank_tol());
  return Subspace(span_of(both, std::max(a.rank_tol(), kDefaultAngleTol)).basis(), a.rank_tol());
}

SubspaceComparison subspace_equal(const Subspace& a, const Subspace& b, double tol) {
  require_same_ambient(a, b, "subspace_equal");
  SubspaceComparison out;
  out.dim_a = a.dim();
  out.dim_b = b.dim();
  out.distance = (a.projector() - b.projector()).norm();
  out.equal = out.dim_a == out.dim_b && out.distance <= tol;
  return out;
}

Subspace apply_map(const CMatrix& mtx, const Subspace& a, std::optional<double> rank_tol) {
  if (mtx.cols() != a.ambient_dim()) {
    throw Error(ErrorKind::DimensionMismatch,
                "apply_map: matrix has " + std::to_string(mtx.cols()) +
                    " columns, subspace lives in dimension " + std::to_string(a.ambient_dim()));
  }
  const double tol = rank_tol.value_or(kDefaultApplyMapTol);
  if (a.dim() == 0 || mtx.rows() == 0) return Subspace::zero(mtx.rows(), tol);
  // The cut scales with ||mtx||, not with the image, so a subspace that mtx
  // annihilates up to rounding maps to the zero space. Rounding in the
  // basis of `a` is amplified by mtx, hence the looser default.
  const double scale = svd_of(mtx, false, false).sigma(0);
  const Svd svd = svd_of(mtx * a.basis(), true, false);
  Index r = 0;
  while (r < svd.sigma.size() && svd.sigma(r) > tol * std::max(scale, 1.0)) ++r;
  return Subspace(svd.u.leftCols(r), tol);
}

}  // namespace qwspec
