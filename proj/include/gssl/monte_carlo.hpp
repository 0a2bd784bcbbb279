#pragma once

#include <cstddef>
#include <cstdint>

#include "gssl/graph.hpp"
#include "gssl/labels.hpp"
#include "gssl/node_matrix.hpp"

namespace gssl {

struct MonteCarloEstimate {
  NodeMatrix mean;
  // Standard error of each entry of `mean`.
  NodeMatrix standard_error;
};

// Simulates `walkers_per_label` random walks of `steps` steps from every
// labeled node (transition probability w_ij / d_i), adding (y_j - ybar)/d_i
// each time a walk started at x_j sits on x_i at times 0..steps, and
// divides by the walker count. This is an unbiased estimate of u_T.
//
// Walkers are split into fixed blocks, each with its own engine seeded from
// (seed, label, block); the result does not depend on the thread count.
MonteCarloEstimate monte_carlo_ut(const SparseGraph& graph, const LabelSet& labels,
                                  std::size_t steps, std::size_t walkers_per_label,
                                  std::uint64_t seed);

}  // namespace gssl
