#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "gssl/graph.hpp"
#include "gssl/labels.hpp"
#include "gssl/node_matrix.hpp"
#include "gssl/poisson.hpp"

namespace gssl {

enum class PlapMethod {
  // Damped Newton with a conjugate-gradient inner solve.
  newton,
  // Gradient descent with step halving.
  gradient_descent,
};

enum class MeanWeight { degrees, uniform };

struct PlapParams {
  double p = 2.0;
  double mu = 1.0;
  // Initial step of gradient descent; 1 / max_i d_i when unset.
  std::optional<double> step;
  std::size_t max_iter = 500;
  // Stop when the max-norm of the p-Laplace residual is at most this.
  double grad_tol = 1e-10;
  PlapMethod method = PlapMethod::newton;
  MeanWeight weight = MeanWeight::degrees;
  // Called with (iteration, I_p) after every accepted step.
  std::function<void(std::size_t, double)> observer;
};

// -div(|grad u|^{p-2} grad u) - mu * source, with zero flux across edges where
// grad u vanishes. Raises InvalidP unless p > 1.
NodeMatrix plap_gradient(const SparseGraph& graph, const NodeMatrix& u, const LabelSet& labels,
                         double p, double mu);

struct PlapResult {
  NodeMatrix u;
  SolveReport report;
  bool converged = false;
};

// Minimizer of I_p over functions with zero a-weighted mean. Failure to reach
// grad_tol is reported through `converged` and a warning, not an exception.
PlapResult plap_solve(const SparseGraph& graph, const LabelSet& labels, const PlapParams& params);

// Optimal constant lambda_2 with lambda_2 ||u - (u)_a|| <= ||grad u|| for all u.
// Raises DisconnectedGraph when it vanishes.
double poincare_constant_p2(const SparseGraph& graph, std::span<const double> a);

}  // namespace gssl
