#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qwspec/types.hpp"

namespace qwspec {

struct Arc {
  Index origin;
  Index terminus;
};

using Edge = std::pair<Index, Index>;

/// Finite simple graph viewed as a symmetric digraph. Arcs come in
/// consecutive pairs (u->v, v->u) over the sorted edge list (u < v), so the
/// reversal of arc e is e ^ 1.
class Digraph {
 public:
  /// Edges use compacted vertex indices 0..vertex_count-1, in any
  /// orientation and order.
  static Digraph from_edges(Index vertex_count, std::span<const Edge> edges);

  Index vertex_count() const noexcept { return vertex_count_; }
  Index arc_count() const noexcept { return static_cast<Index>(arcs_.size()); }
  Index edge_count() const noexcept { return arc_count() / 2; }

  const Arc& arc(Index e) const { return arcs_[static_cast<std::size_t>(e)]; }
  Index origin(Index e) const { return arc(e).origin; }
  Index terminus(Index e) const { return arc(e).terminus; }
  Index reverse(Index e) const { return involution_[static_cast<std::size_t>(e)]; }

  std::span<const Arc> arcs() const noexcept { return arcs_; }
  std::span<const Index> involution() const noexcept { return involution_; }
  Index degree(Index v) const { return degree_[static_cast<std::size_t>(v)]; }

  /// Canonical edge list, u < v, sorted.
  std::vector<Edge> edges() const;

 private:
  Index vertex_count_ = 0;
  std::vector<Arc> arcs_;
  std::vector<Index> involution_;
  std::vector<Index> degree_;
};

/// Complex weight per arc, indexed like Digraph::arcs().
struct WeightFunction {
  std::vector<Complex> values;
};

struct WeightValidation {
  bool pass = false;
  /// |sum_{o(e)=u} |w(e)|^2 - 1| per vertex.
  std::vector<double> vertex_defects;
  std::vector<Index> zero_weight_arcs;
  Index worst_vertex = -1;
  double max_defect = 0.0;
};

inline constexpr double kDefaultTolNorm = 1e-10;

/// w(e) = 1/sqrt(deg(o(e))).
WeightFunction grover_weights(const Digraph& g);

WeightValidation validate_weights(const Digraph& g, const WeightFunction& w,
                                  double tol_norm = kDefaultTolNorm);

/// A parsed graph file. `vertex_ids[i]` is the id that compacted vertex i
/// carried in the file (first-appearance order).
struct GraphInput {
  Digraph graph;
  std::vector<std::int64_t> vertex_ids;
  std::optional<WeightFunction> weights;
};

/// Edge-list text: "u v [w_uv w_vu]" per line, '#' comments, weights as
/// "re[,im]".
GraphInput parse_graph(std::string_view text);

/// {"edges": [[u,v],...], "weights": {"<arc index>": [re,im]}, "vertices": [...]}
GraphInput parse_graph_json(std::string_view text);

/// Dispatches on the extension: .json goes to parse_graph_json, anything
/// else is read as an edge list.
GraphInput load_graph(const std::filesystem::path& path);

struct Components {
  Index count = 0;
  std::vector<Index> label;  // component id per vertex
};

Components connected_components(const Digraph& g);
bool is_bipartite(const Digraph& g);

/// Stable 64-bit FNV-1a digest of the canonical edge list (and weights when
/// given), hex encoded.
std::string graph_hash(const Digraph& g, const WeightFunction* w = nullptr);

}  // namespace qwspec
