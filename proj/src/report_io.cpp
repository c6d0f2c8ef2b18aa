#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "qwspec/io.hpp"

namespace qwspec {
namespace {

// Shortest representation that round-trips (never more than 17 digits).
std::string fmt17(double x) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string fmt_short(double x) {
  if (std::abs(x) < 5e-13) x = 0.0;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9f", x);
  return buf;
}

Json tolerances_to_json(const SpectralReport& rep) {
  const Tolerances& t = rep.tolerances;
  Json out;
  out["tol_norm"] = t.tol_norm;
  out["tol_op"] = rep.tol_op;
  if (t.rank_tol) {
    out["rank_tol"] = *t.rank_tol;
  } else {
    out["rank_tol"] = "max(rows, cols) * machine_epsilon (relative to sigma_max)";
  }
  out["cluster_tol"] = t.cluster_tol;
  out["tol_match"] = t.tol_match;
  out["tol_sub"] = t.tol_sub;
  out["tol_spec"] = t.tol_spec;
  out["subspace_eq_tol"] = t.subspace_eq_tol;
  out["angle_tol"] = t.angle_tol;
  out["generalized_kernel_power_cap"] = "ambient dimension";
  return out;
}

Json provenance_to_json(const ModelProvenance& p) {
  Json out;
  out["source"] = p.source;
  out["weight_scheme"] = p.weight_scheme;
  out["graph_hash"] = p.graph_hash;
  if (p.seed) out["seed"] = *p.seed;
  if (p.graph) {
    out["vertex_count"] = p.graph->vertex_count();
    out["edge_count"] = p.graph->edge_count();
    out["vertex_ids"] = p.vertex_ids;
  }
  return out;
}

}  // namespace

Json report_to_json(const SpectralReport& rep, bool embed_eigenbases) {
  Json spectrum = Json::array();
  for (const EigItem& it : rep.items) {
    Json e;
    e["re"] = it.value.real();
    e["im"] = it.value.imag();
    e["mult"] = it.multiplicity;
    e["origin"] = origin_name(it.origin);
    if (it.source_mu) e["source_mu"] = *it.source_mu;
    if (embed_eigenbases) e["eigenbasis"] = subspace_to_json(it.eigenbasis);
    spectrum.push_back(std::move(e));
  }

  Json out;
  out["spectrum"] = std::move(spectrum);
  out["m_plus"] = rep.m_plus;
  out["m_minus"] = rep.m_minus;
  if (rep.corollary) {
    out["M_plus"] = rep.corollary->M_plus;
    out["M_minus"] = rep.corollary->M_minus;
    out["corollary"] = {{"connected", rep.corollary->connected},
                        {"components", rep.corollary->components},
                        {"bipartite", rep.corollary->bipartite},
                        {"literal_m_minus", rep.corollary->literal_m_minus}};
  }
  out["dimensions"] = {{"arc_space", rep.arc_space_dim},
                       {"inherited", rep.inherited_dim},
                       {"birth", rep.birth_dim}};

  Json spec_t = Json::array();
  for (const TCluster& c : rep.spectrum_T) spec_t.push_back({{"mu", c.mu}, {"mult", c.multiplicity}});
  out["spectrum_T"] = std::move(spec_t);

  Json verdicts = Json::object();
  for (const auto& [name, v] : rep.verdicts.entries()) {
    Json vj;
    vj["pass"] = v.pass;
    vj["residual"] = v.residual;
    vj["threshold"] = v.threshold;
    if (!v.detail.empty()) vj["detail"] = v.detail;
    verdicts[name] = std::move(vj);
  }
  out["verdicts"] = std::move(verdicts);
  out["all_pass"] = rep.verdicts.all_pass();
  out["tolerances"] = tolerances_to_json(rep);
  out["provenance"] = provenance_to_json(rep.provenance);
  out["warnings"] = rep.warnings;
  return out;
}

Json eigenbases_to_json(const SpectralReport& rep) {
  Json items = Json::array();
  for (const EigItem& it : rep.items) {
    Json e;
    e["re"] = it.value.real();
    e["im"] = it.value.imag();
    e["origin"] = origin_name(it.origin);
    if (it.source_mu) e["source_mu"] = *it.source_mu;
    e["eigenbasis"] = subspace_to_json(it.eigenbasis);
    items.push_back(std::move(e));
  }
  Json out;
  out["items"] = std::move(items);
  return out;
}

std::string spectrum_csv(const SpectralReport& rep) {
  std::ostringstream os;
  os << "re,im,mult,origin\n";
  for (const EigItem& it : rep.items) {
    os << fmt17(it.value.real()) << ',' << fmt17(it.value.imag()) << ',' << it.multiplicity << ','
       << origin_name(it.origin) << '\n';
  }
  return os.str();
}

std::string spectrum_table(const SpectralReport& rep) {
  struct Row {
    Complex value;
    Index mult = 0;
    std::string origin;
    std::string mu;
  };
  std::vector<Row> rows;
  for (const EigItem& it : rep.items) {
    Row* row = nullptr;
    for (Row& r : rows) {
      if (angular_distance(r.value, it.value) <= rep.tolerances.tol_match) row = &r;
    }
    if (row == nullptr) {
      rows.push_back({it.value, 0, {}, "-"});
      row = &rows.back();
    }
    row->mult += it.multiplicity;
    if (!row->origin.empty()) row->origin += " + ";
    row->origin += std::string(origin_name(it.origin)) + "(" + std::to_string(it.multiplicity) + ")";
    if (it.source_mu) row->mu = fmt_short(*it.source_mu);
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const Row& a, const Row& b) { return std::arg(a.value) < std::arg(b.value); });

  std::ostringstream os;
  char line[256];
  std::snprintf(line, sizeof line, "%-14s %-14s %-11s %5s  %-12s %s\n", "re", "im", "arg/pi", "mult",
                "source_mu", "origin");
  os << line;
  for (const Row& r : rows) {
    std::snprintf(line, sizeof line, "%-14s %-14s %-11s %5lld  %-12s ", fmt_short(r.value.real()).c_str(),
                  fmt_short(r.value.imag()).c_str(),
                  fmt_short(std::arg(r.value) / std::numbers::pi).c_str(), static_cast<long long>(r.mult),
                  r.mu.c_str());
    os << line << r.origin << '\n';
  }
  return os.str();
}

}  // namespace qwspec
