#include "qwspec/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qwspec/errors.hpp"

namespace qwspec {

void VerdictSet::add(std::string name, Verdict v) {
  for (auto& [k, existing] : entries_) {
    if (k == name) {
      existing = std::move(v);
      return;
    }
  }
  entries_.emplace_back(std::move(name), std::move(v));
}

void VerdictSet::merge(const VerdictSet& other) {
  for (const auto& [k, v] : other.entries_) add(k, v);
}

const Verdict* VerdictSet::find(std::string_view name) const {
  for (const auto& [k, v] : entries_) {
    if (k == name) return &v;
  }
  return nullptr;
}

bool VerdictSet::all_pass() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const auto& e) { return e.second.pass; });
}

std::vector<std::string> VerdictSet::failures() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : entries_) {
    if (!v.pass) out.push_back(k);
  }
  return out;
}

std::string_view origin_name(Origin o) {
  switch (o) {
    case Origin::InheritedGeneric: return "inherited-generic";
    case Origin::InheritedPlusOne: return "inherited-plus-one";
    case Origin::InheritedMinusOne: return "inherited-minus-one";
    case Origin::BirthPlusOne: return "birth-plus-one";
    case Origin::BirthMinusOne: return "birth-minus-one";
  }
  return "unknown";
}

bool is_birth(Origin o) { return o == Origin::BirthPlusOne || o == Origin::BirthMinusOne; }

Complex joukowsky(Complex lambda) {
  if (lambda == Complex(0.0, 0.0)) {
    throw Error(ErrorKind::DomainError, "joukowsky transform is undefined at 0");
  }
  return (lambda + 1.0 / lambda) / 2.0;
}

std::vector<Complex> joukowsky_preimage(double mu, double tol_spec) {
  if (!(std::abs(mu) <= 1.0 + tol_spec)) {
    std::ostringstream os;
    os << "eigenvalue " << mu << " of T lies outside [-1, 1]; model is outside the contraction regime";
    throw Error(ErrorKind::OutOfRange, os.str());
  }
  mu = std::clamp(mu, -1.0, 1.0);
  if (mu == 1.0) return {Complex(1.0, 0.0)};
  if (mu == -1.0) return {Complex(-1.0, 0.0)};
  const double theta = std::acos(mu);
  return {std::polar(1.0, theta), std::polar(1.0, -theta)};
}

double angular_distance(Complex a, Complex b) { return std::abs(std::arg(a * std::conj(b))); }

std::vector<TCluster> spectrum_T(const WalkModel& model, double cluster_tol) {
  const CMatrix& T = model.T();
  const Index n = T.rows();
  if ((T - T.adjoint()).norm() > model.tol_op()) {
    throw Error(ErrorKind::NumericalError, "discriminant operator T is not self-adjoint");
  }
  const CMatrix herm = 0.5 * (T + T.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(herm);
  if (es.info() != Eigen::Success) {
    throw Error(ErrorKind::NumericalError, "Hermitian eigensolver failed on T");
  }
  const Eigen::VectorXd& vals = es.eigenvalues();  // ascending
  const CMatrix& vecs = es.eigenvectors();

  std::vector<TCluster> out;
  Index start = 0;
  while (start < n) {
    Index end = start + 1;
    while (end < n && vals(end) - vals(end - 1) <= cluster_tol) ++end;
    const Index k = end - start;
    double mu = vals.segment(start, k).mean();
    if (std::abs(mu - 1.0) <= cluster_tol) mu = 1.0;
    if (std::abs(mu + 1.0) <= cluster_tol) mu = -1.0;
    out.push_back({mu, k, Subspace(vecs.middleCols(start, k), cluster_tol)});
    start = end;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

namespace {

double max_eigen_residual(const CMatrix& U, const Subspace& s, Complex lambda) {
  if (s.dim() == 0) return 0.0;
  const CMatrix r = U * s.basis() - lambda * s.basis();
  return r.colwise().norm().maxCoeff();
}

std::string format_complex(Complex z) {
  std::ostringstream os;
  os.precision(6);
  os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

}  // namespace

std::vector<EigItem> inherited_eigensystem(const WalkModel& model, std::span<const TCluster> spec_t,
                                           const Tolerances& tol) {
  const CMatrix dA_adj = model.dA().adjoint();
  const CMatrix dB_adj = model.dB().adjoint();
  std::vector<EigItem> out;
  for (const TCluster& c : spec_t) {
    for (const Complex lambda : joukowsky_preimage(c.mu, tol.tol_spec)) {
      EigItem item{lambda, 0, Origin::InheritedGeneric, c.mu, Subspace::zero(model.m())};
      if (c.mu == 1.0 || c.mu == -1.0) {
        // ker(I -+ T) lifts through dA^* alone since dA^* f = +-dB^* f there.
        item.origin = c.mu == 1.0 ? Origin::InheritedPlusOne : Origin::InheritedMinusOne;
        item.eigenbasis = apply_map(dA_adj, c.eigenbasis, tol.rank_tol);
      } else {
        item.eigenbasis = apply_map(dA_adj - lambda * dB_adj, c.eigenbasis, tol.rank_tol);
      }
      item.multiplicity = item.eigenbasis.dim();
      if (item.multiplicity != c.multiplicity) {
        throw Error(ErrorKind::NumericalError,
                    "lifting of the T-eigenspace at mu=" + std::to_string(c.mu) + " lost rank (" +
                        std::to_string(item.multiplicity) + " of " +
                        std::to_string(c.multiplicity) + ")");
      }
      const double res = max_eigen_residual(model.U(), item.eigenbasis, lambda);
      if (res > tol.tol_spec) {
        std::ostringstream os;
        os << "eigenvector residual " << res << " at lambda=" << format_complex(lambda)
           << " exceeds " << tol.tol_spec;
        throw Error(ErrorKind::EigenresidualError, os.str());
      }
      out.push_back(std::move(item));
    }
  }
  return out;
}

std::vector<EigItem> birth_eigensystem(const WalkModel& model, const Tolerances& tol) {
  const Index m = model.m();
  const CMatrix I = CMatrix::Identity(m, m);
  const Subspace ker_dA = kernel(model.dA(), tol.rank_tol);
  std::vector<EigItem> out;
  for (const int sign : {+1, -1}) {
    // U = -S on ker dA, so U v = sign v  <=>  S v = -sign v.
    Subspace space = intersect(ker_dA, kernel(I + sign * model.S(), tol.rank_tol), tol.angle_tol);
    if (space.dim() == 0) continue;
    const Index k = space.dim();
    out.push_back({Complex(sign, 0.0), k, sign > 0 ? Origin::BirthPlusOne : Origin::BirthMinusOne,
                   std::nullopt, std::move(space)});
  }
  return out;
}

CorollaryMultiplicities corollary_multiplicities(const Digraph& g, std::span<const TCluster> spec_t,
                                                 double angle_tol) {
  CorollaryMultiplicities out;
  const Components comps = connected_components(g);
  out.components = comps.count;
  out.connected = comps.count == 1;
  out.bipartite = is_bipartite(g);

  const TCluster* plus = nullptr;
  const TCluster* minus = nullptr;
  for (const TCluster& c : spec_t) {
    if (c.mu == 1.0) plus = &c;
    if (c.mu == -1.0) minus = &c;
  }
  out.m_plus = plus ? plus->multiplicity : 0;
  out.m_minus = minus ? minus->multiplicity : 0;
  out.literal_m_minus = (out.m_plus > 0 && out.bipartite) ? 1 : 0;

  std::vector<Index> comp_vertices(static_cast<std::size_t>(comps.count), 0);
  std::vector<Index> comp_edges(static_cast<std::size_t>(comps.count), 0);
  for (Index v = 0; v < g.vertex_count(); ++v) ++comp_vertices[static_cast<std::size_t>(comps.label[static_cast<std::size_t>(v)])];
  for (const auto& [u, v] : g.edges()) ++comp_edges[static_cast<std::size_t>(comps.label[static_cast<std::size_t>(u)])];

  // ker(I -+ T) splits over components since T is block diagonal; the share
  // of component c is the rank of the basis rows on its vertices.
  auto component_dim = [&](const TCluster* c, Index comp) -> Index {
    if (c == nullptr) return 0;
    std::vector<Index> rows;
    for (Index v = 0; v < g.vertex_count(); ++v) {
      if (comps.label[static_cast<std::size_t>(v)] == comp) rows.push_back(v);
    }
    CMatrix sub(static_cast<Index>(rows.size()), c->eigenbasis.dim());
    for (std::size_t i = 0; i < rows.size(); ++i) sub.row(static_cast<Index>(i)) = c->eigenbasis.basis().row(rows[i]);
    return image(sub, angle_tol).dim();
  };

  for (Index comp = 0; comp < comps.count; ++comp) {
    const Index excess = comp_edges[static_cast<std::size_t>(comp)] - comp_vertices[static_cast<std::size_t>(comp)];
    const Index mp = out.connected ? out.m_plus : component_dim(plus, comp);
    const Index mm = out.connected ? out.m_minus : component_dim(minus, comp);
    out.M_plus += std::max<Index>(0, excess + mp);
    out.M_minus += std::max<Index>(0, excess + mm);
  }
  return out;
}

std::vector<OracleCluster> oracle_eigensystem(const CMatrix& U, double tol_match) {
  const Index m = U.rows();
  if (m == 0) return {};
  Eigen::ComplexSchur<CMatrix> schur(U);
  if (schur.info() != Eigen::Success) {
    throw Error(ErrorKind::NumericalError, "Schur decomposition of U failed");
  }
  const CMatrix& Q = schur.matrixU();
  const CMatrix& R = schur.matrixT();

  std::vector<Index> order(static_cast<std::size_t>(m));
  for (Index i = 0; i < m; ++i) order[static_cast<std::size_t>(i)] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](Index a, Index b) { return std::arg(R(a, a)) < std::arg(R(b, b)); });

  std::vector<std::vector<Index>> groups;
  for (Index idx : order) {
    if (!groups.empty() && angular_distance(R(groups.back().back(), groups.back().back()), R(idx, idx)) <= tol_match) {
      groups.back().push_back(idx);
    } else {
      groups.push_back({idx});
    }
  }
  // Angles wrap at -1; join the first and last groups when they meet there.
  if (groups.size() > 1 &&
      angular_distance(R(groups.front().front(), groups.front().front()),
                       R(groups.back().back(), groups.back().back())) <= tol_match) {
    groups.front().insert(groups.front().end(), groups.back().begin(), groups.back().end());
    groups.pop_back();
  }

  std::vector<OracleCluster> out;
  for (const auto& grp : groups) {
    Complex acc(0.0, 0.0);
    CMatrix basis(m, static_cast<Index>(grp.size()));
    for (std::size_t j = 0; j < grp.size(); ++j) {
      acc += R(grp[j], grp[j]);
      basis.col(static_cast<Index>(j)) = Q.col(grp[j]);
    }
    Complex value = acc / std::abs(acc);
    if (angular_distance(value, 1.0) <= tol_match) value = 1.0;
    if (angular_distance(value, -1.0) <= tol_match) value = -1.0;
    out.push_back({value, static_cast<Index>(grp.size()), Subspace(std::move(basis), tol_match)});
  }
  std::stable_sort(out.begin(), out.end(), [](const OracleCluster& a, const OracleCluster& b) {
    return std::arg(a.value) < std::arg(b.value);
  });
  return out;
}

Subspace pm1_inherited_eigenspace(const WalkModel& model, int sign, const Tolerances& tol) {
  const Index n2 = model.Ttilde().rows();
  const CMatrix shifted = CMatrix::Identity(n2, n2) - static_cast<double>(sign) * model.Ttilde();
  const Subspace eig = kernel(shifted, tol.rank_tol);
  const Subspace gen = generalized_kernel(shifted, 2, tol.rank_tol).space;
  const Subspace reps = complement_within(eig, gen, tol.angle_tol);
  return apply_map(model.L(), reps, tol.rank_tol);
}

}  // namespace qwspec
