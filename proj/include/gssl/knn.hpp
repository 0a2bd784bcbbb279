#pragma once

#include <cstddef>

#include "gssl/graph.hpp"

namespace gssl {

struct KnnOptions {
  std::size_t k = 10;
  // Drop the kernel's diagonal. When false every node carries the self weight
  // the symmetrized kernel assigns at distance zero (1 + 1 = 2).
  bool zero_diagonal = true;
  // When the K-th neighbor distance of a point is zero (duplicates), use its
  // smallest strictly positive distance to any other point instead of
  // raising DegenerateScale.
  bool degenerate_fallback = false;
};

// Gaussian-weighted K-nearest-neighbor graph:
//   w_ij = exp(-4 |x_i - x_j|^2 / d_K(x_i)^2)  for j among the K nearest of i,
// with d_K(x_i) the distance to the K-th nearest neighbor (self excluded),
// then symmetrized to W + W^T. Neighbor ties go to the lower index.
SparseGraph build_knn_graph(const FeatureMatrix& features, const KnnOptions& options = {});

}  // namespace gssl
