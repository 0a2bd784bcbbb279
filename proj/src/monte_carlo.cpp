#include "gssl/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "gssl/error.hpp"
#include "gssl/rng.hpp"

namespace gssl {

namespace {

constexpr std::size_t walkers_per_block = 4096;

std::size_t next_node(const SparseGraph& g, std::size_t i, rng::Engine& engine) {
  const auto cols = g.neighbors(i);
  const auto ws = g.neighbor_weights(i);
  const double target = rng::uniform01(engine) * g.degree(i);
  double acc = 0.0;
  for (std::size_t e = 0; e < cols.size(); ++e) {
    acc += ws[e];
    if (target < acc) return cols[e];
  }
  return cols.back();
}

}  // namespace

MonteCarloEstimate monte_carlo_ut(const SparseGraph& graph, const LabelSet& labels,
                                  std::size_t steps, std::size_t walkers_per_label,
                                  std::uint64_t seed) {
  if (walkers_per_label == 0) fail(ErrorCode::InvalidArgument, "need at least one walker");
  labels.check_nodes(graph.size());
  const std::size_t n = graph.size();
  const std::size_t k = labels.num_classes();
  for (const auto& e : labels.entries()) {
    if (!(graph.degree(e.node) > 0.0)) fail(ErrorCode::ZeroDegreeNode, "labeled node has degree 0");
  }

  const NodeMatrix source = source_matrix(labels, n);
  const double walkers = static_cast<double>(walkers_per_label);
  MonteCarloEstimate out{NodeMatrix(n, k), NodeMatrix(n, k)};
  NodeMatrix variance(n, k);

  const std::size_t blocks = (walkers_per_label + walkers_per_block - 1) / walkers_per_block;
  const auto entries = labels.entries();
  for (std::size_t j = 0; j < entries.size(); ++j) {
    // Visit counts per node for this label: sum over walkers of c and c^2,
    // accumulated per block and merged in block order.
    std::vector<std::vector<double>> block_sum(blocks, std::vector<double>(n, 0.0));
    std::vector<std::vector<double>> block_sq(blocks, std::vector<double>(n, 0.0));
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(blocks); ++b) {
      const auto blk = static_cast<std::size_t>(b);
      rng::Engine engine(rng::derive_seed(seed, j, blk));
      const std::size_t lo = blk * walkers_per_block;
      const std::size_t hi = std::min(walkers_per_label, lo + walkers_per_block);
      std::vector<std::size_t> path(steps + 1);
      auto& sum = block_sum[blk];
      auto& sq = block_sq[blk];
      for (std::size_t w = lo; w < hi; ++w) {
        std::size_t at = entries[j].node;
        path[0] = at;
        for (std::size_t t = 1; t <= steps; ++t) {
          at = next_node(graph, at, engine);
          path[t] = at;
        }
        std::sort(path.begin(), path.end());
        for (std::size_t a = 0; a < path.size();) {
          std::size_t b2 = a;
          while (b2 < path.size() && path[b2] == path[a]) ++b2;
          const double count = static_cast<double>(b2 - a);
          sum[path[a]] += count;
          sq[path[a]] += count * count;
          a = b2;
        }
      }
    }
    std::vector<double> total(n, 0.0);
    std::vector<double> total_sq(n, 0.0);
    for (std::size_t blk = 0; blk < blocks; ++blk) {
      for (std::size_t i = 0; i < n; ++i) {
        total[i] += block_sum[blk][i];
        total_sq[i] += block_sq[blk][i];
      }
    }
    const auto y = source.row(entries[j].node);
    for (std::size_t i = 0; i < n; ++i) {
      if (total[i] == 0.0) continue;
      const double mean_count = total[i] / walkers;
      // Sample variance of the per-walker visit count.
      const double var_count =
          walkers > 1.0
              ? std::max(0.0, (total_sq[i] - walkers * mean_count * mean_count) / (walkers - 1.0))
              : 0.0;
      const double inv_d = 1.0 / graph.degree(i);
      for (std::size_t c = 0; c < k; ++c) {
        const double coeff = y[c] * inv_d;
        out.mean(i, c) += coeff * mean_count;
        variance(i, c) += coeff * coeff * var_count / walkers;
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < k; ++c) out.standard_error(i, c) = std::sqrt(variance(i, c));
  }
  return out;
}

}  // namespace gssl
