#include "gssl/laplace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <tuple>

#include "gssl/error.hpp"
#include "gssl/kernels.hpp"

namespace gssl {

namespace {

void check_components_labeled(const SparseGraph& graph, const LabelSet& labels) {
  const auto component = connected_components(graph);
  const std::size_t count =
      component.empty() ? 0 : *std::max_element(component.begin(), component.end()) + 1;
  std::vector<char> has_label(count, 0);
  for (const auto& e : labels.entries()) has_label[component[e.node]] = 1;
  for (std::size_t c = 0; c < count; ++c) {
    if (!has_label[c]) {
      fail(ErrorCode::DisconnectedGraph,
           "a connected component contains no labeled node; the harmonic extension is not unique");
    }
  }
}

// max over unlabeled rows of |L u|_inf / d_i.
double harmonic_residual(const SparseGraph& graph, const NodeMatrix& u,
                         std::span<const char> pinned) {
  NodeMatrix lu(u.rows(), u.cols());
  kernels::laplacian_apply(graph, u, lu);
  double worst = 0.0;
  for (std::size_t i = 0; i < u.rows(); ++i) {
    if (pinned[i] || graph.degree(i) == 0.0) continue;
    for (std::size_t c = 0; c < u.cols(); ++c) {
      worst = std::max(worst, std::abs(lu(i, c)) / graph.degree(i));
    }
  }
  return worst;
}

std::size_t solve_jacobi(const SparseGraph& graph, NodeMatrix& u, std::span<const char> pinned,
                         const LaplaceOptions& options) {
  NodeMatrix next(u.rows(), u.cols());
  std::size_t it = 0;
  while (it < options.max_iter) {
    // For Jacobi the sweep change on row i equals |L u(x_i)| / d_i.
    const double change = kernels::jacobi_sweep(graph, u, pinned, next);
    if (change <= options.tol) break;
    std::swap(u, next);
    ++it;
  }
  return it;
}

// Solves L_UU x = -L_UL y for one channel with diagonal-preconditioned CG,
// written over full-length vectors that are zero on pinned rows.
std::size_t solve_cg_channel(const SparseGraph& graph, NodeMatrix& u, std::size_t channel,
                             std::span<const char> pinned, const LaplaceOptions& options) {
  const std::size_t n = graph.size();
  const auto& d = graph.degrees();
  NodeMatrix x(n, 1);
  NodeMatrix r(n, 1);
  NodeMatrix z(n, 1);
  NodeMatrix p(n, 1);
  NodeMatrix q(n, 1);

  // r = -L u on free rows with u as currently filled (labels pinned, free rows
  // as initial guess).
  for (std::size_t i = 0; i < n; ++i) x(i, 0) = u(i, channel);
  kernels::laplacian_apply(graph, x, q);
  auto scaled_residual = [&] {
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!pinned[i]) worst = std::max(worst, std::abs(r(i, 0)) / d[i]);
    }
    return worst;
  };
  for (std::size_t i = 0; i < n; ++i) r(i, 0) = pinned[i] ? 0.0 : -q(i, 0);
  for (std::size_t i = 0; i < n; ++i) z(i, 0) = pinned[i] ? 0.0 : r(i, 0) / d[i];
  p = z;
  double rz = kernels::dot(r.values(), z.values());

  std::size_t it = 0;
  while (it < options.max_iter && scaled_residual() > options.tol) {
    kernels::laplacian_apply(graph, p, q);
    for (std::size_t i = 0; i < n; ++i) {
      if (pinned[i]) q(i, 0) = 0.0;
    }
    const double pq = kernels::dot(p.values(), q.values());
    if (!(pq > 0.0)) break;
    const double alpha = rz / pq;
    for (std::size_t i = 0; i < n; ++i) {
      x(i, 0) += alpha * p(i, 0);
      r(i, 0) -= alpha * q(i, 0);
      z(i, 0) = pinned[i] ? 0.0 : r(i, 0) / d[i];
    }
    const double rz_next = kernels::dot(r.values(), z.values());
    const double beta = rz_next / rz;
    rz = rz_next;
    for (std::size_t i = 0; i < n; ++i) p(i, 0) = z(i, 0) + beta * p(i, 0);
    ++it;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!pinned[i]) u(i, channel) = x(i, 0);
  }
  return it;
}

}  // namespace

HarmonicSolution laplace_solve(const SparseGraph& graph, const LabelSet& labels,
                               const LaplaceOptions& options) {
  if (labels.empty()) fail(ErrorCode::NoLabels, "at least one labeled node is required");
  labels.check_nodes(graph.size());
  check_components_labeled(graph, labels);
  const std::size_t n = graph.size();
  const std::size_t k = labels.num_classes();

  HarmonicSolution out{NodeMatrix(n, k), 0.0, 0};
  std::vector<char> pinned(n, 0);
  for (const auto& e : labels.entries()) {
    pinned[e.node] = 1;
    out.u(e.node, e.cls) = 1.0;
  }
  if (labels.size() == n) return out;

  if (options.method == LaplaceMethod::jacobi) {
    out.iterations = solve_jacobi(graph, out.u, pinned, options);
  } else {
    for (std::size_t c = 0; c < k; ++c) {
      out.iterations = std::max(out.iterations, solve_cg_channel(graph, out.u, c, pinned, options));
    }
  }
  out.residual = harmonic_residual(graph, out.u, pinned);
  return out;
}

std::vector<std::size_t> centered_decision(const NodeMatrix& u, std::span<const double> ybar_w) {
  if (ybar_w.size() != u.cols()) fail(ErrorCode::DimensionMismatch, "ybar_w length differs from k");
  std::vector<std::size_t> classes(u.rows(), 0);
  for (std::size_t i = 0; i < u.rows(); ++i) {
    std::size_t best = 0;
    double best_value = u(i, 0) - ybar_w[0];
    for (std::size_t c = 1; c < u.cols(); ++c) {
      const double v = u(i, c) - ybar_w[c];
      if (v > best_value) {
        best = c;
        best_value = v;
      }
    }
    classes[i] = best;
  }
  return classes;
}

std::vector<std::size_t> geodesic_nn(const SparseGraph& graph, const LabelSet& labels) {
  if (labels.empty()) fail(ErrorCode::NoLabels, "at least one labeled node is required");
  labels.check_nodes(graph.size());
  const std::size_t n = graph.size();
  constexpr double inf = std::numeric_limits<double>::infinity();
  constexpr std::size_t none = std::numeric_limits<std::size_t>::max();

  std::vector<double> dist(n, inf);
  std::vector<std::size_t> source(n, none);
  std::vector<std::size_t> source_class(n, 0);
  std::vector<char> done(n, 0);
  // (distance, source node, node): lexicographic order gives the tie rule.
  using Item = std::tuple<double, std::size_t, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  for (const auto& e : labels.entries()) {
    dist[e.node] = 0.0;
    source[e.node] = e.node;
    source_class[e.node] = e.cls;
    heap.emplace(0.0, e.node, e.node);
  }
  while (!heap.empty()) {
    const auto [di, si, i] = heap.top();
    heap.pop();
    if (done[i]) continue;
    done[i] = 1;
    const auto cols = graph.neighbors(i);
    const auto ws = graph.neighbor_weights(i);
    for (std::size_t e = 0; e < cols.size(); ++e) {
      const std::size_t j = cols[e];
      if (done[j] || j == i) continue;
      const double cand = di + 1.0 / ws[e];
      if (cand < dist[j] || (cand == dist[j] && si < source[j])) {
        dist[j] = cand;
        source[j] = si;
        source_class[j] = source_class[i];
        heap.emplace(cand, si, j);
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (source[i] == none) {
      fail(ErrorCode::DisconnectedGraph,
           "node " + std::to_string(i) + " cannot reach any labeled node");
    }
  }
  return source_class;
}

}  // namespace gssl
