#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "gssl/graph.hpp"

namespace gssl::synth {

struct LabeledFeatures {
  FeatureMatrix features;
  std::vector<std::size_t> truth;
};

struct LabeledGraph {
  SparseGraph graph;
  std::vector<std::size_t> truth;
};

// n points drawn uniformly from [0,1]^2.
FeatureMatrix uniform_square(std::size_t n, std::uint64_t seed);

// `classes` isotropic unit-variance Gaussian blobs in R^dim, `per_class`
// points each, stored class by class. Blob centers sit on scaled coordinate
// axes so every pair of centers is `separation` apart; needs dim >= classes.
LabeledFeatures blobs(std::size_t classes, std::size_t per_class, double separation,
                      std::size_t dim, std::uint64_t seed);

// Two unit-weight cliques of `size` nodes joined by one edge of weight 1e-3
// between nodes size-1 and size. Truth is the clique index.
LabeledGraph two_cliques(std::size_t size);

}  // namespace gssl::synth
