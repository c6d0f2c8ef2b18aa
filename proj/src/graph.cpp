#include "qwspec/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <queue>
#include <set>

#include "qwspec/errors.hpp"

namespace qwspec {

Digraph Digraph::from_edges(Index vertex_count, std::span<const Edge> edges) {
  if (vertex_count <= 0) {
    throw Error(ErrorKind::IsolatedVertex, "graph has no vertices");
  }
  std::vector<Edge> canon;
  canon.reserve(edges.size());
  for (const auto& [a, b] : edges) {
    if (a < 0 || b < 0 || a >= vertex_count || b >= vertex_count) {
      throw Error(ErrorKind::DimensionMismatch,
                  "edge (" + std::to_string(a) + "," + std::to_string(b) +
                      ") references a vertex outside 0.." +
                      std::to_string(vertex_count - 1));
    }
    if (a == b) {
      throw Error(ErrorKind::SelfLoopForbidden,
                  "self-loop on vertex " + std::to_string(a));
    }
    canon.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::sort(canon.begin(), canon.end());
  if (auto dup = std::adjacent_find(canon.begin(), canon.end()); dup != canon.end()) {
    throw Error(ErrorKind::DuplicateEdge, "duplicate edge " + std::to_string(dup->first) +
                                              " " + std::to_string(dup->second));
  }

  Digraph g;
  g.vertex_count_ = vertex_count;
  g.degree_.assign(static_cast<std::size_t>(vertex_count), 0);
  g.arcs_.reserve(2 * canon.size());
  g.involution_.reserve(2 * canon.size());
  for (const auto& [u, v] : canon) {
    const auto e = static_cast<Index>(g.arcs_.size());
    g.arcs_.push_back({u, v});
    g.arcs_.push_back({v, u});
    g.involution_.push_back(e + 1);
    g.involution_.push_back(e);
    ++g.degree_[static_cast<std::size_t>(u)];
    ++g.degree_[static_cast<std::size_t>(v)];
  }
  for (Index v = 0; v < vertex_count; ++v) {
    if (g.degree(v) == 0) {
      throw Error(ErrorKind::IsolatedVertex, "vertex " + std::to_string(v) + " has degree 0");
    }
  }
  return g;
}

std::vector<Edge> Digraph::edges() const {
  std::vector<Edge> out;
  out.reserve(static_cast<std::size_t>(edge_count()));
  for (Index e = 0; e < arc_count(); e += 2) out.emplace_back(origin(e), terminus(e));
  return out;
}

WeightFunction grover_weights(const Digraph& g) {
  WeightFunction w;
  w.values.reserve(static_cast<std::size_t>(g.arc_count()));
  for (const Arc& a : g.arcs()) {
    w.values.emplace_back(1.0 / std::sqrt(static_cast<double>(g.degree(a.origin))), 0.0);
  }
  return w;
}

WeightValidation validate_weights(const Digraph& g, const WeightFunction& w, double tol_norm) {
  if (static_cast<Index>(w.values.size()) != g.arc_count()) {
    throw Error(ErrorKind::DimensionMismatch,
                "weight vector has " + std::to_string(w.values.size()) + " entries, graph has " +
                    std::to_string(g.arc_count()) + " arcs");
  }
  WeightValidation out;
  std::vector<double> sums(static_cast<std::size_t>(g.vertex_count()), 0.0);
  for (Index e = 0; e < g.arc_count(); ++e) {
    const Complex we = w.values[static_cast<std::size_t>(e)];
    if (std::abs(we) == 0.0) out.zero_weight_arcs.push_back(e);
    sums[static_cast<std::size_t>(g.origin(e))] += std::norm(we);
  }
  out.vertex_defects.resize(sums.size());
  for (std::size_t v = 0; v < sums.size(); ++v) {
    out.vertex_defects[v] = std::abs(sums[v] - 1.0);
    if (out.worst_vertex < 0 || out.vertex_defects[v] > out.max_defect) {
      out.max_defect = out.vertex_defects[v];
      out.worst_vertex = static_cast<Index>(v);
    }
  }
  out.pass = out.zero_weight_arcs.empty() && out.max_defect <= tol_norm;
  return out;
}

Components connected_components(const Digraph& g) {
  const auto n = static_cast<std::size_t>(g.vertex_count());
  std::vector<std::vector<Index>> adj(n);
  for (const Arc& a : g.arcs()) adj[static_cast<std::size_t>(a.origin)].push_back(a.terminus);

  Components c;
  c.label.assign(n, -1);
  for (std::size_t s = 0; s < n; ++s) {
    if (c.label[s] >= 0) continue;
    std::queue<Index> q;
    q.push(static_cast<Index>(s));
    c.label[s] = c.count;
    while (!q.empty()) {
      const Index u = q.front();
      q.pop();
      for (Index v : adj[static_cast<std::size_t>(u)]) {
        if (c.label[static_cast<std::size_t>(v)] < 0) {
          c.label[static_cast<std::size_t>(v)] = c.count;
          q.push(v);
        }
      }
    }
    ++c.count;
  }
  return c;
}

bool is_bipartite(const Digraph& g) {
  const auto n = static_cast<std::size_t>(g.vertex_count());
  std::vector<std::vector<Index>> adj(n);
  for (const Arc& a : g.arcs()) adj[static_cast<std::size_t>(a.origin)].push_back(a.terminus);

  std::vector<int> side(n, -1);
  for (std::size_t s = 0; s < n; ++s) {
    if (side[s] >= 0) continue;
    side[s] = 0;
    std::queue<Index> q;
    q.push(static_cast<Index>(s));
    while (!q.empty()) {
      const auto u = static_cast<std::size_t>(q.front());
      q.pop();
      for (Index v : adj[u]) {
        auto& sv = side[static_cast<std::size_t>(v)];
        if (sv < 0) {
          sv = 1 - side[u];
          q.push(v);
        } else if (sv == side[u]) {
          return false;
        }
      }
    }
  }
  return true;
}

namespace {

class Fnv1a {
 public:
  void bytes(const void* data, std::size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
      state_ ^= p[i];
      state_ *= 1099511628211ULL;
    }
  }
  void integer(std::int64_t x) {
    unsigned char buf[8];
    for (int i = 0; i < 8; ++i) buf[i] = static_cast<unsigned char>((static_cast<std::uint64_t>(x) >> (8 * i)) & 0xff);
    bytes(buf, 8);
  }
  void real(double x) {
    char buf[40];
    const int len = std::snprintf(buf, sizeof buf, "%.17g", x);
    bytes(buf, static_cast<std::size_t>(len));
  }
  std::uint64_t value() const { return state_; }

 private:
  std::uint64_t state_ = 14695981039346656037ULL;
};

}  // namespace

std::string graph_hash(const Digraph& g, const WeightFunction* w) {
  Fnv1a h;
  h.integer(g.vertex_count());
  for (const auto& [u, v] : g.edges()) {
    h.integer(u);
    h.integer(v);
  }
  if (w != nullptr) {
    for (const Complex& z : w->values) {
      h.real(z.real());
      h.real(z.imag());
    }
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h.value()));
  return buf;
}

}  // namespace qwspec
