#include "gssl/synth.hpp"

#include <cmath>

#include "gssl/error.hpp"
#include "gssl/rng.hpp"

namespace gssl::synth {

FeatureMatrix uniform_square(std::size_t n, std::uint64_t seed) {
  if (n == 0) fail(ErrorCode::EmptyInput, "n must be at least 1");
  rng::Engine engine(seed);
  std::vector<double> values(2 * n);
  for (double& v : values) v = rng::uniform01(engine);
  return FeatureMatrix(n, 2, std::move(values));
}

LabeledFeatures blobs(std::size_t classes, std::size_t per_class, double separation,
                      std::size_t dim, std::uint64_t seed) {
  if (classes == 0 || per_class == 0) fail(ErrorCode::EmptyInput, "empty blob dataset");
  if (dim < classes) fail(ErrorCode::InvalidArgument, "blobs need dim >= classes");
  if (!(separation >= 0.0)) fail(ErrorCode::InvalidArgument, "separation must be nonnegative");
  const double offset = separation / std::sqrt(2.0);
  rng::Engine engine(seed);
  const std::size_t n = classes * per_class;
  std::vector<double> values(n * dim);
  std::vector<std::size_t> truth(n);
  for (std::size_t c = 0; c < classes; ++c) {
    for (std::size_t r = 0; r < per_class; ++r) {
      const std::size_t i = c * per_class + r;
      truth[i] = c;
      for (std::size_t t = 0; t < dim; ++t) {
        values[i * dim + t] = rng::standard_normal(engine) + (t == c ? offset : 0.0);
      }
    }
  }
  return {FeatureMatrix(n, dim, std::move(values)), std::move(truth)};
}

LabeledGraph two_cliques(std::size_t size) {
  if (size < 2) fail(ErrorCode::InvalidArgument, "cliques need at least two nodes");
  std::vector<WeightedEdge> edges;
  for (std::size_t block = 0; block < 2; ++block) {
    const std::size_t base = block * size;
    for (std::size_t i = 0; i < size; ++i) {
      for (std::size_t j = i + 1; j < size; ++j) edges.push_back({base + i, base + j, 1.0});
    }
  }
  edges.push_back({size - 1, size, 1e-3});
  std::vector<std::size_t> truth(2 * size, 0);
  for (std::size_t i = size; i < 2 * size; ++i) truth[i] = 1;
  return {SparseGraph::from_edges(2 * size, edges), std::move(truth)};
}

}  // namespace gssl::synth
