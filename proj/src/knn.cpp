#include "gssl/knn.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "gssl/error.hpp"
#include "gssl/kernels.hpp"

namespace gssl {

namespace {

double smallest_positive_squared_distance(const FeatureMatrix& x, std::size_t i) {
  double best = std::numeric_limits<double>::infinity();
  const auto xi = x.row(i);
  for (std::size_t j = 0; j < x.rows(); ++j) {
    if (j == i) continue;
    const auto xj = x.row(j);
    double sq = 0.0;
    for (std::size_t c = 0; c < x.dim(); ++c) {
      const double diff = xi[c] - xj[c];
      sq += diff * diff;
    }
    if (sq > 0.0 && sq < best) best = sq;
  }
  return best;
}

}  // namespace

SparseGraph build_knn_graph(const FeatureMatrix& features, const KnnOptions& options) {
  const auto table = kernels::knn_search(features, options.k);
  const std::size_t n = table.rows;
  const std::size_t k = table.k;

  std::vector<WeightedEdge> directed;
  directed.reserve(2 * n * k + (options.zero_diagonal ? 0 : n));
  for (std::size_t i = 0; i < n; ++i) {
    double scale = table.squared_distance[i * k + k - 1];
    if (scale == 0.0) {
      if (!options.degenerate_fallback) {
        fail(ErrorCode::DegenerateScale,
             "point " + std::to_string(i) + " has a zero K-th neighbor distance");
      }
      scale = smallest_positive_squared_distance(features, i);
      if (!std::isfinite(scale)) {
        fail(ErrorCode::DegenerateScale, "all points coincide; no positive distance exists");
      }
    }
    for (std::size_t r = 0; r < k; ++r) {
      const std::size_t j = table.index[i * k + r];
      const double w = std::exp(-4.0 * table.squared_distance[i * k + r] / scale);
      // W + W^T: the pair lands in both rows; from_entries sums duplicates.
      directed.push_back({i, j, w});
      directed.push_back({j, i, w});
    }
    if (!options.zero_diagonal) directed.push_back({i, i, 2.0});
  }
  return SparseGraph::from_entries(n, directed);
}

}  // namespace gssl
