#include "qwspec/random_graph.hpp"

#include <algorithm>
#include <cmath>

#include "qwspec/errors.hpp"

namespace qwspec {

Digraph random_connected_graph(Index vertex_count, double edge_probability, std::mt19937_64& rng,
                               int max_attempts) {
  if (vertex_count < 2) throw Error(ErrorKind::DomainError, "random graphs need at least 2 vertices");
  if (!(edge_probability > 0.0 && edge_probability <= 1.0)) {
    throw Error(ErrorKind::DomainError, "edge probability must lie in (0, 1]");
  }
  std::bernoulli_distribution coin(edge_probability);
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    std::vector<Edge> edges;
    std::vector<Index> degree(static_cast<std::size_t>(vertex_count), 0);
    for (Index u = 0; u < vertex_count; ++u) {
      for (Index v = u + 1; v < vertex_count; ++v) {
        if (coin(rng)) {
          edges.emplace_back(u, v);
          ++degree[static_cast<std::size_t>(u)];
          ++degree[static_cast<std::size_t>(v)];
        }
      }
    }
    if (std::find(degree.begin(), degree.end(), 0) != degree.end()) continue;
    Digraph g = Digraph::from_edges(vertex_count, edges);
    if (connected_components(g).count == 1) return g;
  }
  throw Error(ErrorKind::DomainError, "no connected sample within the attempt budget");
}

WeightFunction random_szegedy_weights(const Digraph& g, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  WeightFunction w;
  w.values.resize(static_cast<std::size_t>(g.arc_count()));
  std::vector<double> norm2(static_cast<std::size_t>(g.vertex_count()), 0.0);
  for (Index e = 0; e < g.arc_count(); ++e) {
    Complex z(gauss(rng), gauss(rng));
    // Keep clear of zero weights.
    while (std::abs(z) < 1e-3) z = Complex(gauss(rng), gauss(rng));
    w.values[static_cast<std::size_t>(e)] = z;
    norm2[static_cast<std::size_t>(g.origin(e))] += std::norm(z);
  }
  for (Index e = 0; e < g.arc_count(); ++e) {
    w.values[static_cast<std::size_t>(e)] /= std::sqrt(norm2[static_cast<std::size_t>(g.origin(e))]);
  }
  return w;
}

}  // namespace qwspec
