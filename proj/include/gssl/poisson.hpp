#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gssl/graph.hpp"
#include "gssl/labels.hpp"
#include "gssl/node_matrix.hpp"

namespace gssl {

// Class proportions b: nonnegative, summing to one.
class ClassPrior {
 public:
  explicit ClassPrior(std::vector<double> fractions);

  static ClassPrior uniform(std::size_t k);
  // Fractions of each class in a ground-truth labeling.
  static ClassPrior empirical(std::span<const std::size_t> truth, std::size_t k);

  std::size_t size() const noexcept { return fractions_.size(); }
  std::span<const double> values() const noexcept { return fractions_; }
  double operator[](std::size_t j) const noexcept { return fractions_[j]; }

 private:
  std::vector<double> fractions_;
};

enum class StopRule { mixing_time, fixed_iterations };
enum class StopCause { mixing_time, max_iterations, fixed_iterations, residual, trivial };

const char* to_string(StopCause cause) noexcept;

struct SolveReport {
  std::size_t iterations = 0;
  // Mixing distance, residual or gradient norm, depending on the solver
  // and the stop cause.
  double metric = 0.0;
  StopCause cause = StopCause::fixed_iterations;
  std::vector<std::string> warnings;
};

struct PoissonOptions {
  StopRule rule = StopRule::mixing_time;
  // Mixing tolerance; 1/n when unset.
  std::optional<double> epsilon;
  // Cap on the mixing time T; 10 n when unset.
  std::optional<std::size_t> max_iter;
  // Walk time T for StopRule::fixed_iterations; the result is u_T, which
  // takes T + 1 updates from U = 0.
  std::size_t fixed_iterations = 0;
  // After the stop rule fires, keep iterating until ||L u - source||_inf is at
  // most this value (or polish_max_iter extra steps have run).
  std::optional<double> polish_tolerance;
  std::size_t polish_max_iter = 1'000'000;
  // Use sources d_j (y_j - ybar_w) instead of (y_j - ybar).
  bool degree_weighted_source = false;
  // Called with (t, u_t) after every update.
  std::function<void(std::size_t, const NodeMatrix&)> observer;
};

struct PoissonResult {
  NodeMatrix u;
  SolveReport report;
};

// The Poisson iteration U <- U + D^{-1}(B - L U) from U = 0. The first update
// gives u_0 = D^{-1} B and update t + 1 gives u_t, the centered and
// degree-normalized expected visit count of random walks launched at the
// labels over times 0..t. The iterates converge to the solution of L u = B
// with sum_i d_i u_i = 0. The mixing-time rule returns u_T for the walk's
// mixing time T (T capped at max_iter).
PoissonResult poisson_solve(const SparseGraph& graph, const LabelSet& labels,
                            const PoissonOptions& options = {});

// The same iteration with an arbitrary n x k' source whose columns sum to
// zero (e.g. relabeled sources sum_j (A y_j - A ybar) delta_ij). `labels`
// supplies the walk start for the mixing-time rule.
PoissonResult poisson_solve_source(const SparseGraph& graph, const LabelSet& labels,
                                   const NodeMatrix& source, const PoissonOptions& options = {});

struct MixingTime {
  std::size_t steps = 0;
  bool converged = false;
  double distance = 0.0;
};

// Smallest t <= cap with ||p_t - p_inf||_inf <= epsilon, where
// p_{t+1} = W D^{-1} p_t, p_0 is uniform over the labeled nodes and
// p_inf = d / sum(d). Returns cap with converged == false otherwise.
MixingTime mixing_time_steps(const SparseGraph& graph, const LabelSet& labels, double epsilon,
                             std::size_t cap);

// Column j scaled by s_j = b_j / ybar_j. Raises EmptyClass when ybar_j = 0
// but b_j > 0.
NodeMatrix apply_class_prior(const NodeMatrix& u, std::span<const double> ybar,
                             const ClassPrior& prior);

// Row-wise argmax; ties go to the lowest class index.
std::vector<std::size_t> label_decision(const NodeMatrix& u);

// Full Poisson learning: poisson_solve followed by the class-prior reweighting.
PoissonResult poisson_learning(const SparseGraph& graph, const LabelSet& labels,
                               const ClassPrior& prior, const PoissonOptions& options = {});

// Shared precondition checks for the graph solvers: labels present and in
// range, no zero-degree node, graph connected.
void check_solvable(const SparseGraph& graph, const LabelSet& labels);

}  // namespace gssl
