#pragma once

#include <optional>

#include "qwspec/types.hpp"

namespace qwspec {

/// A linear subspace of C^d held as an orthonormal column basis (d x k).
class Subspace {
 public:
  /// `basis` must already have orthonormal columns (checked to 1e-12 times the ambient dimension).
  Subspace(CMatrix basis, double rank_tol);

  static Subspace zero(Index ambient_dim, double rank_tol = 0.0);
  static Subspace full(Index ambient_dim, double rank_tol = 0.0);

  const CMatrix& basis() const noexcept { return basis_; }
  Index dim() const noexcept { return basis_.cols(); }
  Index ambient_dim() const noexcept { return basis_.rows(); }
  double rank_tol() const noexcept { return rank_tol_; }

  CMatrix projector() const { return basis_ * basis_.adjoint(); }

  /// ||v - P v||, distance of v from the subspace.
  double distance_of(const CVector& v) const;

 private:
  CMatrix basis_;
  double rank_tol_;
};

/// max(d1, d2) * machine epsilon: the relative numerical-rank threshold used
/// when a call does not pass one.
double default_rank_tol(Index rows, Index cols);

/// Default threshold for intersections and complements, applied to sines of
/// principal angles (which are already normalized to [0, 1]).
inline constexpr double kDefaultAngleTol = 1e-9;
inline constexpr double kDefaultSubspaceEqualTol = 1e-8;

/// Right singular vectors with sigma <= rank_tol * sigma_max (or <= rank_tol
/// when sigma_max == 0).
Subspace kernel(const CMatrix& mtx, std::optional<double> rank_tol = {});

/// Column space with the same threshold rule as kernel().
Subspace image(const CMatrix& mtx, std::optional<double> rank_tol = {});

/// Orthonormal basis of the span of arbitrary columns.
Subspace span_of(const CMatrix& vectors, std::optional<double> rank_tol = {});

struct GeneralizedKernel {
  Subspace space;
  int power = 0;            // power actually used
  bool capped = false;      // requested power exceeded the ambient dimension
  Index next_dim = 0;       // dim ker(M^(power+1))
  bool stabilized = false;  // next_dim == space.dim()
};

/// ker(M^power) via the explicit matrix power; power is capped at the
/// ambient dimension.
GeneralizedKernel generalized_kernel(const CMatrix& mtx, int power,
                                     std::optional<double> rank_tol = {});

Subspace intersect(const Subspace& a, const Subspace& b, double angle_tol = kDefaultAngleTol);

/// Orthogonal complement in the ambient space.
Subspace orthogonal_complement(const Subspace& a);

/// outer ∩ inner^⊥: the part of `outer` orthogonal to `inner`.
Subspace complement_within(const Subspace& inner, const Subspace& outer,
                           double angle_tol = kDefaultAngleTol);

/// Span of the union of both bases.
Subspace sum(const Subspace& a, const Subspace& b);

struct SubspaceComparison {
  bool equal = false;
  double distance = 0.0;  // ||P_A - P_B||_F
  Index dim_a = 0;
  Index dim_b = 0;
};

SubspaceComparison subspace_equal(const Subspace& a, const Subspace& b,
                                  double tol = kDefaultSubspaceEqualTol);

/// sqrt(machine epsilon).
inline constexpr double kDefaultApplyMapTol = 1.4901161193847656e-08;

/// Image of a subspace under a linear map. Image directions with singular
/// value at most rank_tol * max(1, ||mtx||_2) are dropped.
Subspace apply_map(const CMatrix& mtx, const Subspace& a, std::optional<double> rank_tol = {});

}  // namespace qwspec
