#pragma once

#include <cstdint>
#include <random>

#include "qwspec/graph.hpp"

namespace qwspec {

/// Erdős–Rényi G(n, p) conditioned on connectivity by rejection.
/// Throws DomainError after `max_attempts` disconnected draws.
Digraph random_connected_graph(Index vertex_count, double edge_probability, std::mt19937_64& rng,
                               int max_attempts = 100000);

/// Independent complex Gaussian weight per arc, each out-star scaled to unit
/// sum of squared moduli.
WeightFunction random_szegedy_weights(const Digraph& g, std::mt19937_64& rng);

}  // namespace qwspec
