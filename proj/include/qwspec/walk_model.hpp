#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qwspec/graph.hpp"
#include "qwspec/types.hpp"

namespace qwspec {

/// Where a model came from. `graph` is kept for graph-built models so that
/// graph-level quantities (connectivity, corollary multiplicities) can be
/// recomputed from a serialized model.
struct ModelProvenance {
  std::string source = "abstract";  // "graph" | "abstract" | "random"
  std::string weight_scheme;        // "grover" | "file" | "random" | ""
  std::string graph_hash;
  std::optional<Digraph> graph;
  std::vector<std::int64_t> vertex_ids;
  std::optional<std::uint64_t> seed;
};

/// One operator identity evaluated on a model.
struct InvariantResidual {
  std::string name;
  double residual = 0.0;
  double threshold = 0.0;
  /// Soft checks describe the implicit regime (||T|| <= 1) and never reject a
  /// model at build time.
  bool hard = true;
  bool pass() const { return residual <= threshold; }
};

/// Dense operators of an abstract quantum walk model, frozen at build time.
///   dA : K2 -> K1 (n x m),  dB = dA S,  C = 2 dA^* dA - I,  U = S C,
///   T = dA dB^* (n x n),  Ttilde = [0, -I; I, 2T],  L = [dA^* | dB^*].
class WalkModel {
 public:
  /// Derives C, U, T, Ttilde and L from the given dA, dB and S without
  /// enforcing dB = dA S or any other invariant. build_model and
  /// build_abstract_model are the checked entry points; this one exists for
  /// deserialization and for deliberately broken models.
  static WalkModel assemble(CMatrix dA, CMatrix dB, CMatrix S, double tol_op,
                            ModelProvenance provenance = {});

  Index n() const noexcept { return dA_.rows(); }
  Index m() const noexcept { return dA_.cols(); }

  const CMatrix& dA() const noexcept { return dA_; }
  const CMatrix& dB() const noexcept { return dB_; }
  const CMatrix& S() const noexcept { return S_; }
  const CMatrix& C() const noexcept { return C_; }
  const CMatrix& U() const noexcept { return U_; }
  const CMatrix& T() const noexcept { return T_; }
  const CMatrix& Ttilde() const noexcept { return Ttilde_; }
  const CMatrix& L() const noexcept { return L_; }
  double tol_op() const noexcept { return tol_op_; }
  const ModelProvenance& provenance() const noexcept { return provenance_; }

  /// All model invariants (self-adjoint unitary S and C, dA dA^* = I,
  /// dB = dA S, unitary U, self-adjoint contraction T).
  std::vector<InvariantResidual> invariant_residuals() const;

  /// Spectral radius of T is at most 1 + tol_op.
  bool in_contraction_regime() const;

 private:
  WalkModel() = default;

  CMatrix dA_, dB_, S_, C_, U_, T_, Ttilde_, L_;
  double tol_op_ = 0.0;
  ModelProvenance provenance_;
};

/// 100 * machine epsilon * m.
double default_tol_op(Index m);

/// dA[v, e] = conj(w(e)) when o(e) = v; S swaps each arc with its reversal.
/// Weights that pass validation at tol_norm are rescaled per out-star to
/// unit norm before use. Throws AssumptionViolated when the weights fail
/// validation and ModelInvariantViolation when a built identity misses tol_op.
WalkModel build_model(const Digraph& g, const WeightFunction& w,
                      std::optional<double> tol_op = {},
                      const std::string& weight_scheme = "file",
                      double tol_norm = kDefaultTolNorm);

/// Model from an arbitrary (dA, S) pair. Throws AssumptionViolated when S is
/// not a self-adjoint involution or dA dA^* != I beyond tol_op.
WalkModel build_abstract_model(const CMatrix& dA, const CMatrix& S,
                               std::optional<double> tol_op = {});

/// ||T - D^{-1/2} A D^{-1/2}||_F; zero for Grover weights.
double discriminant_transition_check(const WalkModel& model, const Digraph& g);

/// [2T, I; -I, 0], the two-sided inverse of Ttilde.
CMatrix ttilde_inverse(const CMatrix& T);

/// [0, -I; I, 2T].
CMatrix companion_operator(const CMatrix& T);

}  // namespace qwspec
