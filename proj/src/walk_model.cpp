#include "qwspec/walk_model.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "qwspec/errors.hpp"

namespace qwspec {
namespace {

std::string describe(const InvariantResidual& r) {
  std::ostringstream os;
  os.precision(6);
  os << r.name << " residual " << r.residual << " exceeds "
     << r.threshold;
  return os.str();
}

void require_invariants(const WalkModel& model, ErrorKind kind) {
  for (const auto& r : model.invariant_residuals()) {
    if (r.hard && !r.pass()) throw Error(kind, describe(r));
  }
}

}  // namespace

CMatrix companion_operator(const CMatrix& T) {
  const Index n = T.rows();
  CMatrix out = CMatrix::Zero(2 * n, 2 * n);
  out.topRightCorner(n, n) = -CMatrix::Identity(n, n);
  out.bottomLeftCorner(n, n) = CMatrix::Identity(n, n);
  out.bottomRightCorner(n, n) = 2.0 * T;
  return out;
}

CMatrix ttilde_inverse(const CMatrix& T) {
  const Index n = T.rows();
  CMatrix out = CMatrix::Zero(2 * n, 2 * n);
  out.topLeftCorner(n, n) = 2.0 * T;
  out.topRightCorner(n, n) = CMatrix::Identity(n, n);
  out.bottomLeftCorner(n, n) = -CMatrix::Identity(n, n);
  return out;
}

WalkModel WalkModel::assemble(CMatrix dA, CMatrix dB, CMatrix S, double tol_op,
                              ModelProvenance provenance) {
  const Index n = dA.rows();
  const Index m = dA.cols();
  if (S.rows() != m || S.cols() != m || dB.rows() != n || dB.cols() != m) {
    throw Error(ErrorKind::DimensionMismatch,
                "operator shapes disagree: dA " + std::to_string(n) + "x" + std::to_string(m) +
                    ", dB " + std::to_string(dB.rows()) + "x" + std::to_string(dB.cols()) +
                    ", S " + std::to_string(S.rows()) + "x" + std::to_string(S.cols()));
  }
  if (!(tol_op > 0.0)) throw Error(ErrorKind::DomainError, "tol_op must be positive");

  WalkModel w;
  w.dA_ = std::move(dA);
  w.dB_ = std::move(dB);
  w.S_ = std::move(S);
  w.C_ = 2.0 * w.dA_.adjoint() * w.dA_ - CMatrix::Identity(m, m);
  w.U_ = w.S_ * w.C_;
  w.T_ = w.dA_ * w.dB_.adjoint();
  w.Ttilde_ = companion_operator(w.T_);
  w.L_.resize(m, 2 * n);
  w.L_ << w.dA_.adjoint(), w.dB_.adjoint();
  w.tol_op_ = tol_op;
  w.provenance_ = std::move(provenance);
  return w;
}

std::vector<InvariantResidual> WalkModel::invariant_residuals() const {
  const Index n = this->n();
  const Index m = this->m();
  const CMatrix In = CMatrix::Identity(n, n);
  const CMatrix Im = CMatrix::Identity(m, m);
  const double tol = tol_op_;

  std::vector<InvariantResidual> out;
  out.push_back({"shift_self_adjoint", (S_ - S_.adjoint()).norm(), tol});
  out.push_back({"shift_involution", (S_ * S_ - Im).norm(), tol});
  out.push_back({"assumption_identity", (dA_ * dA_.adjoint() - In).norm(), tol});
  out.push_back({"shift_consistency", (dB_ - dA_ * S_).norm(), tol});
  out.push_back({"coin_self_adjoint", (C_ - C_.adjoint()).norm(), tol});
  out.push_back({"coin_involution", (C_ * C_ - Im).norm(), tol});
  out.push_back({"walk_unitary", (U_.adjoint() * U_ - Im).norm(), tol});
  out.push_back({"discriminant_self_adjoint", (T_ - T_.adjoint()).norm(), tol});

  double radius = 0.0;
  if (n > 0) {
    Eigen::ComplexEigenSolver<CMatrix> es(T_, false);
    radius = es.eigenvalues().cwiseAbs().maxCoeff();
  }
  out.push_back({"discriminant_contraction", std::max(0.0, radius - 1.0), tol, false});
  return out;
}

bool WalkModel::in_contraction_regime() const {
  for (const auto& r : invariant_residuals()) {
    if (r.name == "discriminant_contraction") return r.pass();
  }
  return true;
}

double default_tol_op(Index m) {
  return 100.0 * std::numeric_limits<double>::epsilon() * static_cast<double>(std::max<Index>(m, 1));
}

WalkModel build_model(const Digraph& g, const WeightFunction& w, std::optional<double> tol_op,
                      const std::string& weight_scheme, double tol_norm) {
  const auto check = validate_weights(g, w, tol_norm);
  if (!check.pass) {
    std::ostringstream os;
    if (!check.zero_weight_arcs.empty()) {
      os << "weight of arc " << check.zero_weight_arcs.front() << " is zero";
    } else {
      os << "weights at vertex " << check.worst_vertex << " have squared norm defect "
         << check.max_defect;
    }
    throw Error(ErrorKind::AssumptionViolated, os.str());
  }

  const Index n = g.vertex_count();
  const Index m = g.arc_count();
  std::vector<double> star_norm2(static_cast<std::size_t>(n), 0.0);
  for (Index e = 0; e < m; ++e) {
    star_norm2[static_cast<std::size_t>(g.origin(e))] += std::norm(w.values[static_cast<std::size_t>(e)]);
  }
  CMatrix dA = CMatrix::Zero(n, m);
  CMatrix S = CMatrix::Zero(m, m);
  for (Index e = 0; e < m; ++e) {
    const double scale = std::sqrt(star_norm2[static_cast<std::size_t>(g.origin(e))]);
    dA(g.origin(e), e) = std::conj(w.values[static_cast<std::size_t>(e)]) / scale;
    S(e, g.reverse(e)) = 1.0;
  }
  CMatrix dB = dA * S;

  ModelProvenance prov;
  prov.source = "graph";
  prov.weight_scheme = weight_scheme;
  prov.graph_hash = graph_hash(g, &w);
  prov.graph = g;

  WalkModel model = WalkModel::assemble(std::move(dA), std::move(dB), std::move(S),
                                        tol_op.value_or(default_tol_op(m)), std::move(prov));
  require_invariants(model, ErrorKind::ModelInvariantViolation);
  return model;
}

WalkModel build_abstract_model(const CMatrix& dA, const CMatrix& S, std::optional<double> tol_op) {
  const Index m = dA.cols();
  if (S.rows() != m || S.cols() != m) {
    throw Error(ErrorKind::DimensionMismatch,
                "S must be " + std::to_string(m) + "x" + std::to_string(m));
  }
  WalkModel model = WalkModel::assemble(dA, dA * S, S, tol_op.value_or(default_tol_op(m)));
  for (const auto& r : model.invariant_residuals()) {
    if (!r.hard || r.pass()) continue;
    const bool premise = r.name == "shift_self_adjoint" || r.name == "shift_involution" ||
                         r.name == "assumption_identity";
    throw Error(premise ? ErrorKind::AssumptionViolated : ErrorKind::ModelInvariantViolation,
                describe(r));
  }
  return model;
}

double discriminant_transition_check(const WalkModel& model, const Digraph& g) {
  const Index n = g.vertex_count();
  if (model.n() != n) {
    throw Error(ErrorKind::DimensionMismatch, "model and graph vertex counts differ");
  }
  CMatrix normalized = CMatrix::Zero(n, n);
  for (const Arc& a : g.arcs()) {
    normalized(a.origin, a.terminus) =
        1.0 / std::sqrt(static_cast<double>(g.degree(a.origin) * g.degree(a.terminus)));
  }
  return (model.T() - normalized).norm();
}

}  // namespace qwspec
