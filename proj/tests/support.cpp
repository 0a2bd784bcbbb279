#include "support.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <utility>

namespace gssl::testing {

double uniform(rng::Engine& engine, double lo, double hi) {
  return lo + (hi - lo) * rng::uniform01(engine);
}

SparseGraph path_graph(std::size_t n, double w) {
  std::vector<WeightedEdge> edges;
  for (std::size_t i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, w});
  return SparseGraph::from_edges(n, edges);
}

SparseGraph complete_graph(std::size_t n, double w) {
  std::vector<WeightedEdge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) edges.push_back({i, j, w});
  }
  return SparseGraph::from_edges(n, edges);
}

SparseGraph random_connected_graph(std::size_t n, rng::Engine& engine, double extra_per_node) {
  std::set<std::pair<std::size_t, std::size_t>> seen;
  std::vector<WeightedEdge> edges;
  auto add = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    if (i > j) std::swap(i, j);
    if (!seen.insert({i, j}).second) return;
    edges.push_back({i, j, uniform(engine, 0.1, 2.0)});
  };
  if (n >= 3) {
    add(0, 1);
    add(1, 2);
    add(0, 2);
  }
  for (std::size_t i = 1; i < n; ++i) add(i, rng::uniform_index(engine, i));
  const auto extra = static_cast<std::size_t>(extra_per_node * static_cast<double>(n));
  for (std::size_t e = 0; e < extra && n >= 2; ++e) {
    add(rng::uniform_index(engine, n), rng::uniform_index(engine, n));
  }
  return SparseGraph::from_edges(n, edges);
}

SparseGraph random_graph(std::size_t n, rng::Engine& engine, double density) {
  std::vector<WeightedEdge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (rng::uniform01(engine) < density) edges.push_back({i, j, uniform(engine, 0.1, 2.0)});
    }
  }
  return SparseGraph::from_edges(n, edges);
}

LabelSet random_labels(std::size_t n, std::size_t k, std::size_t m, rng::Engine& engine) {
  std::vector<std::size_t> nodes(n);
  std::iota(nodes.begin(), nodes.end(), std::size_t{0});
  for (std::size_t r = 0; r < m; ++r) {
    std::swap(nodes[r], nodes[r + rng::uniform_index(engine, n - r)]);
  }
  std::vector<LabeledNode> entries;
  for (std::size_t r = 0; r < m; ++r) {
    const std::size_t cls = r < k ? r : rng::uniform_index(engine, k);
    entries.push_back({nodes[r], cls});
  }
  return LabelSet(std::move(entries), k);
}

NodeMatrix random_matrix(std::size_t rows, std::size_t cols, rng::Engine& engine, double lo,
                         double hi) {
  NodeMatrix u(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t c = 0; c < cols; ++c) u(i, c) = uniform(engine, lo, hi);
  }
  return u;
}

}  // namespace gssl::testing
