#include "gssl/poisson.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "gssl/error.hpp"
#include "gssl/kernels.hpp"

namespace gssl {

ClassPrior::ClassPrior(std::vector<double> fractions) : fractions_(std::move(fractions)) {
  if (fractions_.empty()) fail(ErrorCode::InvalidArgument, "class prior is empty");
  double total = 0.0;
  for (double b : fractions_) {
    if (!(b >= 0.0) || !std::isfinite(b)) {
      fail(ErrorCode::InvalidArgument, "class prior entries must be finite and nonnegative");
    }
    total += b;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    fail(ErrorCode::InvalidArgument, "class prior must sum to 1");
  }
}

ClassPrior ClassPrior::uniform(std::size_t k) {
  return ClassPrior(std::vector<double>(k, 1.0 / static_cast<double>(k)));
}

ClassPrior ClassPrior::empirical(std::span<const std::size_t> truth, std::size_t k) {
  if (truth.empty()) fail(ErrorCode::EmptyInput, "empty ground truth");
  std::vector<double> counts(k, 0.0);
  for (std::size_t c : truth) {
    if (c >= k) fail(ErrorCode::IndexOutOfRange, "truth class id >= k");
    counts[c] += 1.0;
  }
  for (double& c : counts) c /= static_cast<double>(truth.size());
  return ClassPrior(std::move(counts));
}

const char* to_string(StopCause cause) noexcept {
  switch (cause) {
    case StopCause::mixing_time: return "mixing-time";
    case StopCause::max_iterations: return "max-iterations";
    case StopCause::fixed_iterations: return "fixed-T";
    case StopCause::residual: return "residual";
    case StopCause::trivial: return "trivial";
  }
  return "unknown";
}

void check_solvable(const SparseGraph& graph, const LabelSet& labels) {
  if (labels.empty()) fail(ErrorCode::NoLabels, "at least one labeled node is required");
  labels.check_nodes(graph.size());
  for (std::size_t i = 0; i < graph.size(); ++i) {
    if (!(graph.degree(i) > 0.0)) {
      fail(ErrorCode::ZeroDegreeNode, "node " + std::to_string(i) + " has degree 0");
    }
  }
  if (!is_connected(graph)) fail(ErrorCode::DisconnectedGraph, "graph is not connected");
}

MixingTime mixing_time_steps(const SparseGraph& graph, const LabelSet& labels, double epsilon,
                             std::size_t cap) {
  if (!(epsilon > 0.0)) fail(ErrorCode::InvalidArgument, "epsilon must be positive");
  check_solvable(graph, labels);
  const std::size_t n = graph.size();
  const auto& d = graph.degrees();
  const double total = kernels::sum(d);

  std::vector<double> p(n, 0.0);
  std::vector<double> next(n, 0.0);
  const double mass = 1.0 / static_cast<double>(labels.size());
  for (const auto& e : labels.entries()) p[e.node] = mass;

  auto distance = [&] {
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::abs(p[i] - d[i] / total));
    return worst;
  };

  MixingTime result;
  result.distance = distance();
  while (result.distance > epsilon && result.steps < cap) {
    kernels::walk_step(graph, p, next);
    std::swap(p, next);
    ++result.steps;
    result.distance = distance();
  }
  result.converged = result.distance <= epsilon;
  return result;
}

PoissonResult poisson_solve(const SparseGraph& graph, const LabelSet& labels,
                            const PoissonOptions& options) {
  check_solvable(graph, labels);
  const NodeMatrix source = options.degree_weighted_source
                                ? degree_weighted_source(labels, graph.degrees())
                                : source_matrix(labels, graph.size());
  return poisson_solve_source(graph, labels, source, options);
}

PoissonResult poisson_solve_source(const SparseGraph& graph, const LabelSet& labels,
                                   const NodeMatrix& source, const PoissonOptions& options) {
  check_solvable(graph, labels);
  const std::size_t n = graph.size();
  if (source.rows() != n) fail(ErrorCode::DimensionMismatch, "source must have n rows");
  const std::size_t k = source.cols();

  PoissonResult result{NodeMatrix(n, k), {}};
  SolveReport& report = result.report;
  NodeMatrix& u = result.u;
  NodeMatrix next(n, k);
  // Update number t + 1 from U = 0 produces u_t.
  auto notify = [&](std::size_t t) {
    if (options.observer) options.observer(t, u);
  };

  if (source.max_abs() == 0.0) {
    notify(0);
    report.cause = StopCause::trivial;
    report.warnings.emplace_back(
        labels.classes_present() < 2
            ? "all labels belong to one class: the source is zero, u is identically 0 and the "
              "label decision is degenerate"
            : "the source is zero; u is identically 0");
    return result;
  }

  double residual = 0.0;
  auto step = [&] {
    residual = kernels::poisson_step(graph, source, u, next);
    std::swap(u, next);
    ++report.iterations;
    notify(report.iterations - 1);
  };

  if (options.rule == StopRule::fixed_iterations) {
    for (std::size_t t = 0; t <= options.fixed_iterations; ++t) step();
    report.cause = StopCause::fixed_iterations;
    report.metric = residual;
  } else {
    const double epsilon = options.epsilon.value_or(1.0 / static_cast<double>(n));
    if (!(epsilon > 0.0)) fail(ErrorCode::InvalidArgument, "epsilon must be positive");
    const std::size_t cap = options.max_iter.value_or(10 * n);
    const auto& d = graph.degrees();
    const double total = kernels::sum(d);

    // Walk distribution from a uniformly chosen labeled node, advanced in
    // lockstep with u. Stopping at walk time T returns u_T, which counts the
    // visit at time T itself.
    std::vector<double> p(n, 0.0);
    std::vector<double> p_next(n, 0.0);
    const double mass = 1.0 / static_cast<double>(labels.size());
    for (const auto& e : labels.entries()) p[e.node] = mass;
    auto distance = [&] {
      double worst = 0.0;
      for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::abs(p[i] - d[i] / total));
      return worst;
    };

    double dist = distance();
    step();
    for (std::size_t t = 0; dist > epsilon && t < cap; ++t) {
      step();
      kernels::walk_step(graph, p, p_next);
      std::swap(p, p_next);
      dist = distance();
    }
    report.metric = dist;
    if (dist <= epsilon) {
      report.cause = StopCause::mixing_time;
    } else {
      report.cause = StopCause::max_iterations;
      report.warnings.emplace_back("mixing-time criterion not reached within " +
                                   std::to_string(cap) +
                                   " iterations (the graph may be bipartite)");
    }
  }

  if (options.polish_tolerance) {
    const double tol = *options.polish_tolerance;
    std::size_t extra = 0;
    for (;;) {
      // Residual of the current iterate; the trial step is kept only when the
      // tolerance has not yet been met.
      const double r = kernels::poisson_step(graph, source, u, next);
      if (r <= tol) {
        report.metric = r;
        report.cause = StopCause::residual;
        break;
      }
      if (extra == options.polish_max_iter) {
        report.metric = r;
        report.cause = StopCause::max_iterations;
        report.warnings.emplace_back("residual tolerance not reached while polishing");
        break;
      }
      std::swap(u, next);
      ++report.iterations;
      ++extra;
      notify(report.iterations - 1);
    }
  }
  return result;
}

NodeMatrix apply_class_prior(const NodeMatrix& u, std::span<const double> ybar,
                             const ClassPrior& prior) {
  if (ybar.size() != u.cols() || prior.size() != u.cols()) {
    fail(ErrorCode::DimensionMismatch, "class prior, label mean and u disagree on k");
  }
  std::vector<double> scale(u.cols(), 0.0);
  for (std::size_t j = 0; j < u.cols(); ++j) {
    if (ybar[j] > 0.0) {
      scale[j] = prior[j] / ybar[j];
    } else if (prior[j] > 0.0) {
      fail(ErrorCode::EmptyClass,
           "class " + std::to_string(j) + " has prior mass but no labeled examples");
    }
  }
  NodeMatrix out = u;
  for (std::size_t i = 0; i < u.rows(); ++i) {
    for (std::size_t j = 0; j < u.cols(); ++j) out(i, j) *= scale[j];
  }
  return out;
}

std::vector<std::size_t> label_decision(const NodeMatrix& u) {
  std::vector<std::size_t> classes(u.rows(), 0);
  for (std::size_t i = 0; i < u.rows(); ++i) {
    const auto row = u.row(i);
    std::size_t best = 0;
    for (std::size_t c = 1; c < row.size(); ++c) {
      if (row[c] > row[best]) best = c;
    }
    classes[i] = best;
  }
  return classes;
}

PoissonResult poisson_learning(const SparseGraph& graph, const LabelSet& labels,
                               const ClassPrior& prior, const PoissonOptions& options) {
  PoissonResult result = poisson_solve(graph, labels, options);
  result.u = apply_class_prior(result.u, labels.mean(), prior);
  return result;
}

}  // namespace gssl
