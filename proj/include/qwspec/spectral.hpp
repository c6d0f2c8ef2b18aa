#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qwspec/graph.hpp"
#include "qwspec/subspace.hpp"
#include "qwspec/walk_model.hpp"

namespace qwspec {

/// Every threshold the analysis uses. tol_op lives on the model itself.
struct Tolerances {
  double tol_norm = kDefaultTolNorm;
  /// Relative numerical-rank threshold; unset means max(d1, d2) * eps per matrix.
  std::optional<double> rank_tol;
  /// Eigenvalues of T closer than this are one cluster; clusters this close
  /// to +-1 are snapped to exactly +-1.
  double cluster_tol = 1e-8;
  /// Angular distance for matching eigenvalues of U on the unit circle.
  double tol_match = 1e-8;
  /// Projector distances between eigenspaces and the projector-sum check.
  double tol_sub = 1e-7;
  /// Unit-modulus slack and eigenvector residual bound.
  double tol_spec = 1e-8;
  double subspace_eq_tol = kDefaultSubspaceEqualTol;
  double angle_tol = kDefaultAngleTol;
};

struct Verdict {
  bool pass = false;
  double residual = 0.0;
  double threshold = 0.0;
  std::string detail;
};

/// Named verdicts in insertion order.
class VerdictSet {
 public:
  void add(std::string name, Verdict v);
  void merge(const VerdictSet& other);
  const Verdict* find(std::string_view name) const;
  bool all_pass() const;
  std::vector<std::string> failures() const;
  const std::vector<std::pair<std::string, Verdict>>& entries() const noexcept { return entries_; }

 private:
  std::vector<std::pair<std::string, Verdict>> entries_;
};

enum class Origin {
  InheritedGeneric,
  InheritedPlusOne,
  InheritedMinusOne,
  BirthPlusOne,
  BirthMinusOne,
};

std::string_view origin_name(Origin o);
bool is_birth(Origin o);

/// A cluster of eigenvalues of T.
struct TCluster {
  double mu = 0.0;
  Index multiplicity = 0;
  Subspace eigenbasis;  // in K1
};

/// One eigenspace of U, inherited (from an eigenvalue of T) or birth.
struct EigItem {
  Complex value;
  Index multiplicity = 0;
  Origin origin = Origin::InheritedGeneric;
  std::optional<double> source_mu;
  Subspace eigenbasis;  // in K2
};

struct CorollaryMultiplicities {
  Index m_plus = 0;
  Index m_minus = 0;
  Index M_plus = 0;
  Index M_minus = 0;
  bool connected = true;
  Index components = 1;
  bool bipartite = false;
  /// m_- as the corollary literally phrases it: 1 when 1 is in Spec(T) and
  /// the graph is bipartite.
  Index literal_m_minus = 0;
};

/// Eigenvalue cluster of U from a direct Schur decomposition.
struct OracleCluster {
  Complex value;
  Index multiplicity = 0;
  Subspace eigenspace;
};

struct SpectralReport {
  std::vector<EigItem> items;
  std::vector<TCluster> spectrum_T;
  std::vector<OracleCluster> oracle;
  Index m_plus = 0;
  Index m_minus = 0;
  std::optional<CorollaryMultiplicities> corollary;
  Index inherited_dim = 0;  // dim of Im L
  Index birth_dim = 0;      // dim of ker dA ∩ ker dB
  Index arc_space_dim = 0;
  VerdictSet verdicts;
  Tolerances tolerances;
  double tol_op = 0.0;
  std::vector<std::string> warnings;
  ModelProvenance provenance;
};

/// (lambda + 1/lambda) / 2. Throws DomainError at 0.
Complex joukowsky(Complex lambda);

/// {e^{+i arccos mu}, e^{-i arccos mu}}, a single value at mu = +-1.
/// Throws OutOfRange when |mu| > 1 + tol_spec.
std::vector<Complex> joukowsky_preimage(double mu, double tol_spec = 1e-8);

/// Angular distance between two nonzero complex numbers.
double angular_distance(Complex a, Complex b);

/// Hermitian eigendecomposition of T, clustered, sorted by descending mu.
std::vector<TCluster> spectrum_T(const WalkModel& model, double cluster_tol = 1e-8);

/// Eigenspaces of U on Im L built from the eigenspaces of T.
std::vector<EigItem> inherited_eigensystem(const WalkModel& model,
                                           std::span<const TCluster> spec_t,
                                           const Tolerances& tol = {});

/// Eigenspaces of U on (Im L)^⊥: ker dA ∩ ker(I + S) at +1 and
/// ker dA ∩ ker(I - S) at -1; empty subspaces are omitted.
std::vector<EigItem> birth_eigensystem(const WalkModel& model, const Tolerances& tol = {});

/// m_+-, and M_+- = max{0, |E| - |V| + m_+-} (summed per component when the
/// graph is disconnected).
CorollaryMultiplicities corollary_multiplicities(const Digraph& g,
                                                 std::span<const TCluster> spec_t,
                                                 double angle_tol = kDefaultAngleTol);

/// Direct eigendecomposition of U (Schur form), clustered on the unit circle.
std::vector<OracleCluster> oracle_eigensystem(const CMatrix& U, double tol_match = 1e-8);

/// L applied to the part of ker(I - s Ttilde)^2 orthogonal to ker(I - s Ttilde),
/// s = +1 or -1: the inherited eigenspace of U at s.
Subspace pm1_inherited_eigenspace(const WalkModel& model, int sign, const Tolerances& tol = {});

/// Operator identities and kernel characterizations on one model.
VerdictSet verify_lemmas(const WalkModel& model, const Tolerances& tol = {});

struct ReportOptions {
  Tolerances tolerances;
  bool verify_lemmas = true;
};

/// Inherited + birth eigensystem, cross-checked against the Schur oracle.
/// Failures are recorded in the verdicts; the report is always returned.
SpectralReport full_report(const WalkModel& model, const Digraph* graph = nullptr,
                           const ReportOptions& options = {});

}  // namespace qwspec
