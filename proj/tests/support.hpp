#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <Eigen/Eigenvalues>

#include "qwspec/graph.hpp"
#include "qwspec/walk_model.hpp"

namespace qwspec::test {

inline Digraph path2() {
  const std::vector<Edge> e{{0, 1}};
  return Digraph::from_edges(2, e);
}

inline Digraph cycle(Index n) {
  std::vector<Edge> e;
  for (Index v = 0; v < n; ++v) e.emplace_back(v, (v + 1) % n);
  return Digraph::from_edges(n, e);
}

inline Digraph complete(Index n) {
  std::vector<Edge> e;
  for (Index u = 0; u < n; ++u) {
    for (Index v = u + 1; v < n; ++v) e.emplace_back(u, v);
  }
  return Digraph::from_edges(n, e);
}

inline Digraph star(Index leaves) {
  std::vector<Edge> e;
  for (Index v = 1; v <= leaves; ++v) e.emplace_back(0, v);
  return Digraph::from_edges(leaves + 1, e);
}

inline WalkModel grover_model(const Digraph& g) { return build_model(g, grover_weights(g), std::nullopt, "grover"); }

// Test-side oracle: eigenvalues of U from the general complex eigensolver,
// independent of the Schur-based path used by the library.
inline std::vector<Complex> eigenvalues_of(const CMatrix& u) {
  Eigen::ComplexEigenSolver<CMatrix> es(u, false);
  std::vector<Complex> out(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  return out;
}

// Number of eigenvalues within `tol` of z.
inline Index count_near(const std::vector<Complex>& values, Complex z, double tol = 1e-8) {
  return static_cast<Index>(
      std::count_if(values.begin(), values.end(), [&](Complex v) { return std::abs(v - z) <= tol; }));
}

inline Complex unit(double angle) { return std::polar(1.0, angle); }

}  // namespace qwspec::test
