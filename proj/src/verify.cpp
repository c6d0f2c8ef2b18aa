#include <algorithm>
#include <cmath>
#include <sstream>

#include "qwspec/errors.hpp"
#include "qwspec/spectral.hpp"

namespace qwspec {
namespace {

Verdict bound(double residual, double threshold, std::string detail = {}) {
  return {residual <= threshold, residual, threshold, std::move(detail)};
}

// Fails outright when an integer identity is broken; otherwise bounds the
// continuous residual.
Verdict dims_then_bound(bool dims_ok, double residual, double threshold, std::string detail) {
  Verdict v = bound(residual, threshold, std::move(detail));
  if (!dims_ok) v.pass = false;
  return v;
}

CMatrix block_diag2(const CMatrix& a) {
  const Index n = a.rows();
  CMatrix out = CMatrix::Zero(2 * n, 2 * n);
  out.topLeftCorner(n, n) = a;
  out.bottomRightCorner(n, n) = a;
  return out;
}

CMatrix power(const CMatrix& a, int k) {
  CMatrix out = CMatrix::Identity(a.rows(), a.cols());
  for (int i = 0; i < k; ++i) out = out * a;
  return out;
}

// [F; c F] / sqrt(2) for each basis column f: the subspace (1, c) ⊗ span F.
Subspace tensor_line(const Subspace& f, double c) {
  const Index n = f.ambient_dim();
  CMatrix out(2 * n, f.dim());
  out.topRows(n) = f.basis() / std::sqrt(2.0);
  out.bottomRows(n) = c * f.basis() / std::sqrt(2.0);
  return Subspace(std::move(out), f.rank_tol());
}

// C^2 ⊗ span F.
Subspace tensor_full(const Subspace& f) {
  const Index n = f.ambient_dim();
  CMatrix out = CMatrix::Zero(2 * n, 2 * f.dim());
  out.topLeftCorner(n, f.dim()) = f.basis();
  out.bottomRightCorner(n, f.dim()) = f.basis();
  return Subspace(std::move(out), f.rank_tol());
}

std::string dims_detail(const char* what, Index got, Index want) {
  return std::string(what) + " " + std::to_string(got) + " (expected " + std::to_string(want) + ")";
}

// Eigenvalues away from +-1, sorted by angle; used to compare Spec(Ttilde)
// and Spec(U|L) off the Jordan points.
constexpr double kJordanExclusion = 1e-6;

std::vector<Complex> off_pm1(const Eigen::VectorXcd& vals) {
  std::vector<Complex> out;
  for (Index i = 0; i < vals.size(); ++i) {
    if (std::abs(vals(i) - 1.0) > kJordanExclusion && std::abs(vals(i) + 1.0) > kJordanExclusion) {
      out.push_back(vals(i));
    }
  }
  std::sort(out.begin(), out.end(), [](Complex a, Complex b) { return std::arg(a) < std::arg(b); });
  return out;
}

}  // namespace

VerdictSet verify_lemmas(const WalkModel& model, const Tolerances& tol) {
  VerdictSet out;
  const double tol_op = model.tol_op();
  const Index n = model.n();
  const Index m = model.m();
  const CMatrix& U = model.U();
  const CMatrix& L = model.L();
  const CMatrix& T = model.T();
  const CMatrix& Tt = model.Ttilde();
  const CMatrix In = CMatrix::Identity(n, n);
  const CMatrix I2n = CMatrix::Identity(2 * n, 2 * n);
  const CMatrix Im = CMatrix::Identity(m, m);

  for (const auto& r : model.invariant_residuals()) {
    out.add(r.name, bound(r.residual, r.threshold,
                          r.hard ? std::string{} : "model outside the self-adjoint contraction regime"));
  }

  out.add("intertwining", bound((U * L - L * Tt).norm(), tol_op));

  const Subspace im_L = image(L, tol.rank_tol);
  {
    const CMatrix P = im_L.projector();
    const double leak = std::max(((Im - P) * U * P).norm(), (P * U * (Im - P)).norm());
    out.add("invariance", bound(leak, tol_op));
  }

  {
    const CMatrix inv = ttilde_inverse(T);
    const double res = std::max((Tt * inv - I2n).norm(), (inv * Tt - I2n).norm());
    out.add("explicit_inverse", bound(res, tol_op));
  }

  {
    const auto cmp = subspace_equal(kernel(L, tol.rank_tol), kernel(I2n - Tt * Tt, tol.rank_tol),
                                    tol.subspace_eq_tol);
    out.add("kernel_identity",
            dims_then_bound(cmp.dim_a == cmp.dim_b, cmp.distance, tol.subspace_eq_tol,
                            dims_detail("dim ker L vs ker(I-Tt^2):", cmp.dim_a, cmp.dim_b)));
  }

  {
    const Subspace lbot = intersect(kernel(model.dA(), tol.rank_tol),
                                    kernel(model.dB(), tol.rank_tol), tol.angle_tol);
    const auto cmp = subspace_equal(orthogonal_complement(im_L), lbot, tol.subspace_eq_tol);
    out.add("birth_space_characterization",
            dims_then_bound(cmp.dim_a == cmp.dim_b && im_L.dim() + lbot.dim() == m, cmp.distance,
                            tol.subspace_eq_tol,
                            dims_detail("dim (Im L)^perp vs ker dA ∩ ker dB:", cmp.dim_a, cmp.dim_b)));
  }

  for (const int sign : {+1, -1}) {
    const char* suffix = sign > 0 ? "_plus" : "_minus";
    const double s = sign;
    const Subspace ker_t = kernel(In - s * T, tol.rank_tol);
    const Index k = ker_t.dim();

    // (I - s Tt)^{2j} = 2^j (-s Tt)^j diag((I - s T)^j, (I - s T)^j), j = 1..3
    {
      double worst = 0.0;
      double worst_ratio = 0.0;
      double threshold = tol_op;
      for (int j = 1; j <= 3; ++j) {
        const CMatrix lhs = power(I2n - s * Tt, 2 * j);
        const CMatrix rhs = std::pow(2.0, j) * power(-s * Tt, j) * block_diag2(power(In - s * T, j));
        const double res = (lhs - rhs).norm();
        const double thr = tol_op * std::max(1.0, lhs.norm());
        if (res / thr > worst_ratio || j == 1) {
          worst_ratio = res / thr;
          worst = res;
          threshold = thr;
        }
      }
      out.add(std::string("power_identity") + suffix, bound(worst, threshold));
    }

    // ker(I - s Tt) = (1, -s) ⊗ ker(I - s T); ker(I - s Tt)^j = C^2 ⊗ ker(I - s T), j >= 2
    {
      const CMatrix shifted = I2n - s * Tt;
      const Subspace k1 = kernel(shifted, tol.rank_tol);
      const auto g2 = generalized_kernel(shifted, 2, tol.rank_tol);
      const auto g3 = generalized_kernel(shifted, 3, tol.rank_tol);
      const bool dims_ok = k1.dim() == k && g2.space.dim() == 2 * k && g3.space.dim() == 2 * k &&
                           g2.stabilized && g3.stabilized;
      const auto c1 = subspace_equal(k1, tensor_line(ker_t, -s), tol.subspace_eq_tol);
      const auto c2 = subspace_equal(g2.space, tensor_full(ker_t), tol.subspace_eq_tol);
      std::ostringstream detail;
      detail << "dim ker(I-+T)=" << k << ", dims ker(I-+Tt)^j for j=1,2,3: " << k1.dim() << ","
             << g2.space.dim() << "," << g3.space.dim();
      out.add(std::string("generalized_kernel") + suffix,
              dims_then_bound(dims_ok, std::max(c1.distance, c2.distance), tol.subspace_eq_tol,
                              detail.str()));
    }

    // f in ker(I - s T)  <=>  dA^* f = s dB^* f
    {
      const CMatrix diff = model.dA().adjoint() - s * model.dB().adjoint();
      double worst = 0.0;
      for (Index j = 0; j < k; ++j) worst = std::max(worst, (diff * ker_t.basis().col(j)).norm());
      out.add(std::string("kernel_alignment") + suffix, bound(worst, tol_op));
      const auto cmp = subspace_equal(kernel(diff, tol.rank_tol), ker_t, tol.subspace_eq_tol);
      out.add(std::string("kernel_alignment_converse") + suffix,
              dims_then_bound(cmp.dim_a == cmp.dim_b, cmp.distance, tol.subspace_eq_tol,
                              dims_detail("dim ker(dA^* -+ dB^*) vs ker(I -+ T):", cmp.dim_a, cmp.dim_b)));
    }

    // The eigenspace of U|L at s, reached three ways: L over the purely
    // generalized part of ker(I - s Tt)^2, dA^* ker(I - s T), L(Z) with
    // Z = ker((I - s Tt)^2 (I + s Tt)), and directly as ker(U - s I) ∩ Im L.
    {
      const Subspace via_gen = pm1_inherited_eigenspace(model, sign, tol);
      const Subspace via_dA = apply_map(model.dA().adjoint(), ker_t, tol.rank_tol);
      const CMatrix z_op = power(I2n - s * Tt, 2) * (I2n + s * Tt);
      const Subspace via_z = apply_map(L, kernel(z_op, tol.rank_tol), tol.rank_tol);
      const Subspace direct = intersect(kernel(U - s * Im, tol.rank_tol), im_L, tol.angle_tol);
      const auto a = subspace_equal(via_gen, via_dA, tol.tol_sub);
      const auto b = subspace_equal(via_gen, via_z, tol.tol_sub);
      const auto c = subspace_equal(via_gen, direct, tol.tol_sub);
      double eig_res = 0.0;
      if (via_gen.dim() > 0) {
        eig_res = (U * via_gen.basis() - s * via_gen.basis()).colwise().norm().maxCoeff();
      }
      const bool dims_ok = via_gen.dim() == k && a.dim_b == k && b.dim_b == k && c.dim_b == k;
      std::ostringstream detail;
      detail << "dims: generalized " << via_gen.dim() << ", dA^* " << a.dim_b << ", Z " << b.dim_b
             << ", direct " << c.dim_b << ", ker(I-+T) " << k;
      out.add(std::string("pm1_characterization") + suffix,
              dims_then_bound(dims_ok && eig_res <= tol.tol_spec,
                              std::max({a.distance, b.distance, c.distance}), tol.tol_sub,
                              detail.str()));
    }
  }

  // Spec(Ttilde) \ {±1} = Spec(U|L) \ {±1}, with multiplicity.
  {
    Eigen::ComplexEigenSolver<CMatrix> et(Tt, false);
    const CMatrix restricted = im_L.basis().adjoint() * U * im_L.basis();
    Eigen::ComplexEigenSolver<CMatrix> eu(restricted, false);
    const auto a = off_pm1(et.eigenvalues());
    const auto b = off_pm1(eu.eigenvalues());
    double worst = 0.0;
    const bool counts = a.size() == b.size();
    if (counts) {
      for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    }
    out.add("spectrum_off_pm1",
            dims_then_bound(counts, worst, tol.tol_match,
                            dims_detail("eigenvalues of Tt off ±1:", static_cast<Index>(a.size()),
                                        static_cast<Index>(b.size()))));
  }
  return out;
}

namespace {

struct ItemGroup {
  Index multiplicity = 0;
  CMatrix basis;
};

// Items whose eigenvalue lies within tol_match of `value`, stacked.
ItemGroup gather_items(const std::vector<EigItem>& items, Complex value, double tol_match, Index m) {
  ItemGroup g;
  g.basis.resize(m, 0);
  for (const EigItem& it : items) {
    if (angular_distance(it.value, value) > tol_match) continue;
    g.multiplicity += it.multiplicity;
    CMatrix next(m, g.basis.cols() + it.eigenbasis.dim());
    next << g.basis, it.eigenbasis.basis();
    g.basis = std::move(next);
  }
  return g;
}

}  // namespace

SpectralReport full_report(const WalkModel& model, const Digraph* graph, const ReportOptions& options) {
  const Tolerances& tol = options.tolerances;
  SpectralReport rep;
  rep.tolerances = tol;
  rep.tol_op = model.tol_op();
  rep.provenance = model.provenance();
  rep.arc_space_dim = model.m();
  const Index m = model.m();

  if (options.verify_lemmas) rep.verdicts = verify_lemmas(model, tol);
  if (!model.in_contraction_regime()) {
    rep.warnings.push_back("model outside the self-adjoint contraction regime: spectral radius of T exceeds 1");
  }

  const Subspace im_L = image(model.L(), tol.rank_tol);
  const Subspace lbot = intersect(kernel(model.dA(), tol.rank_tol), kernel(model.dB(), tol.rank_tol),
                                  tol.angle_tol);
  rep.inherited_dim = im_L.dim();
  rep.birth_dim = lbot.dim();
  if (lbot.dim() == 0) {
    rep.warnings.push_back("birth space is trivial; Spec(U) on it holds vacuously");
  }

  bool constructed = true;
  try {
    rep.spectrum_T = spectrum_T(model, tol.cluster_tol);
    rep.items = inherited_eigensystem(model, rep.spectrum_T, tol);
    auto birth = birth_eigensystem(model, tol);
    rep.items.insert(rep.items.end(), std::make_move_iterator(birth.begin()),
                     std::make_move_iterator(birth.end()));
    rep.verdicts.add("spectral_construction", {true, 0.0, 0.0, {}});
  } catch (const Error& e) {
    constructed = false;
    rep.verdicts.add("spectral_construction",
                     {false, 0.0, 0.0, std::string(e.name()) + ": " + e.what()});
  }

  for (const TCluster& c : rep.spectrum_T) {
    if (c.mu == 1.0) rep.m_plus = c.multiplicity;
    if (c.mu == -1.0) rep.m_minus = c.multiplicity;
  }

  rep.oracle = oracle_eigensystem(model.U(), tol.tol_match);

  if (graph != nullptr && constructed) {
    rep.corollary = corollary_multiplicities(*graph, rep.spectrum_T, tol.angle_tol);
    if (!rep.corollary->connected) {
      rep.warnings.push_back("ConnectivityWarning: graph has " +
                             std::to_string(rep.corollary->components) +
                             " components; M+- summed per component");
    }
  }
  if (!constructed) return rep;

  // Every oracle cluster is matched by report items with equal multiplicity
  // and the same eigenspace; every item is matched by some cluster.
  {
    double worst = 0.0;
    bool ok = true;
    std::string detail;
    for (const OracleCluster& oc : rep.oracle) {
      const ItemGroup g = gather_items(rep.items, oc.value, tol.tol_match, m);
      if (g.multiplicity != oc.multiplicity) {
        ok = false;
        std::ostringstream os;
        os << "multiplicity at arg " << std::arg(oc.value) << ": report " << g.multiplicity
           << ", oracle " << oc.multiplicity;
        detail = os.str();
        continue;
      }
      const auto cmp = subspace_equal(span_of(g.basis, tol.angle_tol), oc.eigenspace, tol.tol_sub);
      worst = std::max(worst, cmp.distance);
    }
    for (const EigItem& it : rep.items) {
      const bool matched = std::any_of(rep.oracle.begin(), rep.oracle.end(), [&](const OracleCluster& oc) {
        return angular_distance(oc.value, it.value) <= tol.tol_match;
      });
      if (!matched) {
        ok = false;
        detail = "report eigenvalue without an oracle counterpart";
      }
    }
    rep.verdicts.add("oracle_match", dims_then_bound(ok, worst, tol.tol_sub, detail));
  }

  // phi_QW(Spec(U|L)) with multiplicity equals Spec(T) with interior values
  // doubled and ±1 single.
  {
    std::vector<double> from_u;
    for (const OracleCluster& oc : rep.oracle) {
      const Index k = intersect(oc.eigenspace, im_L, tol.angle_tol).dim();
      const double phi = joukowsky(oc.value).real();
      for (Index j = 0; j < k; ++j) from_u.push_back(phi);
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (model.T() + model.T().adjoint()), Eigen::EigenvaluesOnly);
    std::vector<double> from_t;
    for (Index i = 0; i < es.eigenvalues().size(); ++i) {
      const double mu = es.eigenvalues()(i);
      const bool endpoint = std::abs(std::abs(mu) - 1.0) <= tol.cluster_tol;
      from_t.push_back(mu);
      if (!endpoint) from_t.push_back(mu);
    }
    std::sort(from_u.begin(), from_u.end());
    std::sort(from_t.begin(), from_t.end());
    double worst = 0.0;
    const bool counts = from_u.size() == from_t.size();
    if (counts) {
      for (std::size_t i = 0; i < from_u.size(); ++i) worst = std::max(worst, std::abs(from_u[i] - from_t[i]));
    }
    rep.verdicts.add("spectral_mapping",
                     dims_then_bound(counts, worst, tol.tol_match,
                                     dims_detail("multiset sizes U|L vs T:", static_cast<Index>(from_u.size()),
                                                 static_cast<Index>(from_t.size()))));
  }

  // Σ multiplicities = dim K2 and the eigenprojectors sum to I.
  {
    Index total = 0;
    CMatrix psum = CMatrix::Zero(m, m);
    for (const EigItem& it : rep.items) {
      total += it.multiplicity;
      psum += it.eigenbasis.projector();
    }
    rep.verdicts.add("completeness",
                     dims_then_bound(total == m, (psum - CMatrix::Identity(m, m)).norm(), tol.tol_sub,
                                     dims_detail("sum of multiplicities", total, m)));
  }

  // Spec(U|L^perp) ⊆ {±1} with the birth items as eigenspaces; the birth
  // vectors are eigenvectors that stay out of Im L.
  {
    bool ok = true;
    std::string detail;
    for (const OracleCluster& oc : rep.oracle) {
      const Index k = intersect(oc.eigenspace, lbot, tol.angle_tol).dim();
      Index expected = 0;
      for (const EigItem& it : rep.items) {
        if (is_birth(it.origin) && angular_distance(it.value, oc.value) <= tol.tol_match) expected += it.multiplicity;
      }
      if (k != expected) {
        ok = false;
        std::ostringstream os;
        os << "birth dimension at arg " << std::arg(oc.value) << ": oracle " << k << ", report " << expected;
        detail = os.str();
      }
    }
    double worst = 0.0;
    const CMatrix P = im_L.projector();
    for (const EigItem& it : rep.items) {
      if (!is_birth(it.origin)) continue;
      const CMatrix& B = it.eigenbasis.basis();
      worst = std::max(worst, (model.U() * B - it.value * B).colwise().norm().maxCoeff());
      worst = std::max(worst, (P * B).colwise().norm().maxCoeff());
    }
    rep.verdicts.add("birth_spectrum", dims_then_bound(ok, worst, tol.tol_spec, detail));
  }

  // Purely generalized part of ker(I -+ Ttilde)^2 lifted by L against the
  // oracle's eigenspace at ±1 restricted to Im L.
  for (const int sign : {+1, -1}) {
    const Subspace lifted = pm1_inherited_eigenspace(model, sign, tol);
    Subspace oracle_part = Subspace::zero(m);
    for (const OracleCluster& oc : rep.oracle) {
      if (angular_distance(oc.value, Complex(sign, 0.0)) <= tol.tol_match) {
        oracle_part = intersect(oc.eigenspace, im_L, tol.angle_tol);
      }
    }
    const auto cmp = subspace_equal(lifted, oracle_part, tol.tol_sub);
    rep.verdicts.add(sign > 0 ? "pm1_oracle_plus" : "pm1_oracle_minus",
                     dims_then_bound(cmp.dim_a == cmp.dim_b, cmp.distance, tol.tol_sub,
                                     dims_detail("dim lifted vs oracle:", cmp.dim_a, cmp.dim_b)));
  }

  if (rep.corollary) {
    Index birth_plus = 0;
    Index birth_minus = 0;
    for (const EigItem& it : rep.items) {
      if (it.origin == Origin::BirthPlusOne) birth_plus += it.multiplicity;
      if (it.origin == Origin::BirthMinusOne) birth_minus += it.multiplicity;
    }
    const bool ok = birth_plus == rep.corollary->M_plus && birth_minus == rep.corollary->M_minus;
    std::ostringstream os;
    os << "birth (+1,-1) = (" << birth_plus << "," << birth_minus << "), M = (" << rep.corollary->M_plus
       << "," << rep.corollary->M_minus << ")";
    rep.verdicts.add("corollary_birth_multiplicities",
                     {ok, static_cast<double>(std::abs(birth_plus - rep.corollary->M_plus) +
                                              std::abs(birth_minus - rep.corollary->M_minus)),
                      0.0, os.str()});
  }
  return rep;
}

}  // namespace qwspec
