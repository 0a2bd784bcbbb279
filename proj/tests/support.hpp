#pragma once

// Instance generators shared by the unit tests and the acceptance binary.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "gssl/graph.hpp"
#include "gssl/labels.hpp"
#include "gssl/node_matrix.hpp"
#include "gssl/rng.hpp"

namespace gssl::testing {

SparseGraph path_graph(std::size_t n, double w = 1.0);
SparseGraph complete_graph(std::size_t n, double w = 1.0);

// Connected, non-bipartite (contains the triangle 0-1-2), weights in
// [0.1, 2). A random spanning tree plus about `extra_per_node * n` extra
// edges.
SparseGraph random_connected_graph(std::size_t n, rng::Engine& engine, double extra_per_node = 2.0);

// Any graph on n nodes with each pair present with probability `density`;
// may be disconnected.
SparseGraph random_graph(std::size_t n, rng::Engine& engine, double density);

// m distinct labeled nodes, classes in {0..k-1}; the first k labels get
// classes 0..k-1 so every class is present when m >= k.
LabelSet random_labels(std::size_t n, std::size_t k, std::size_t m, rng::Engine& engine);

NodeMatrix random_matrix(std::size_t rows, std::size_t cols, rng::Engine& engine,
                         double lo = -1.0, double hi = 1.0);

double uniform(rng::Engine& engine, double lo, double hi);

}  // namespace gssl::testing
