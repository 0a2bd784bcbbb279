#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gssl/graph.hpp"
#include "gssl/labels.hpp"
#include "gssl/node_matrix.hpp"

namespace gssl {

enum class LaplaceMethod {
  // Conjugate gradients on the unlabeled block, preconditioned by its diagonal.
  conjugate_gradient,
  // Label propagation: replace u(x_i) by the weighted neighbor average.
  jacobi,
};

struct LaplaceOptions {
  // Stop when max over unlabeled i of |L u(x_i)| / d_i <= tol.
  double tol = 1e-8;
  std::size_t max_iter = 100'000;
  LaplaceMethod method = LaplaceMethod::conjugate_gradient;
};

// Harmonic extension of the labels. Labeled rows hold their one-hot labels
// exactly; `residual` is max over unlabeled i of |L u(x_i)| / d_i.
struct HarmonicSolution {
  NodeMatrix u;
  double residual = 0.0;
  std::size_t iterations = 0;
};

HarmonicSolution laplace_solve(const SparseGraph& graph, const LabelSet& labels,
                               const LaplaceOptions& options = {});

// argmax_j (u_j(x_i) - ybar_w_j), lowest index on ties.
std::vector<std::size_t> centered_decision(const NodeMatrix& u, std::span<const double> ybar_w);

// Class of the nearest labeled node in graph geodesic distance, with edge
// length 1 / w_ij. Distance ties go to the labeled node with the lower
// index. Raises DisconnectedGraph if some node cannot reach any label.
std::vector<std::size_t> geodesic_nn(const SparseGraph& graph, const LabelSet& labels);

}  // namespace gssl
