#include "gssl/mbo.hpp"

#include <algorithm>
#include <string>

#include "gssl/error.hpp"
#include "gssl/kernels.hpp"

namespace gssl {

void MboParams::validate() const {
  if (!(mu > 0.0)) fail(ErrorCode::InvalidArgument, "mu must be positive");
  if (n_inner < 1 || n_outer < 1 || s_iters < 1) {
    fail(ErrorCode::InvalidArgument, "MBO iteration counts must be at least 1");
  }
  if (dt && !(*dt > 0.0)) fail(ErrorCode::InvalidArgument, "dt must be positive");
  if (!(dtau > 0.0)) fail(ErrorCode::InvalidArgument, "dtau must be positive");
  if (!(s_min > 0.0 && s_min <= 1.0 && 1.0 <= s_max)) {
    fail(ErrorCode::InvalidArgument, "need 0 < s_min <= 1 <= s_max");
  }
}

NodeMatrix e1_descent_step(const SparseGraph& graph, const NodeMatrix& u, const NodeMatrix& source,
                           double mu, double dt) {
  if (u.rows() != graph.size() || !u.same_shape(source)) {
    fail(ErrorCode::DimensionMismatch, "u and source must both be n x k");
  }
  if (!(dt > 0.0)) fail(ErrorCode::InvalidArgument, "dt must be positive");
  NodeMatrix out(u.rows(), u.cols());
  kernels::e1_step(graph, u, source, mu, dt, out);
  return out;
}

std::size_t simplex_vertex_index(std::span<const double> v) {
  std::size_t best = 0;
  for (std::size_t j = 1; j < v.size(); ++j) {
    if (v[j] > v[best]) best = j;
  }
  return best;
}

std::vector<double> simplex_vertex_projection(std::span<const double> v) {
  std::vector<double> out(v.size(), 0.0);
  if (!v.empty()) out[simplex_vertex_index(v)] = 1.0;
  return out;
}

namespace {

// argmax_j s_j u_ij for every row.
void scaled_argmax(const NodeMatrix& u, std::span<const double> s, std::vector<std::size_t>& out) {
  const std::size_t n = u.rows();
  const std::size_t k = u.cols();
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t best = 0;
    double best_value = s[0] * u(i, 0);
    for (std::size_t j = 1; j < k; ++j) {
      const double v = s[j] * u(i, j);
      if (v > best_value) {
        best = j;
        best_value = v;
      }
    }
    out[i] = best;
  }
}

}  // namespace

NodeMatrix volume_projection(const NodeMatrix& u, const ClassPrior& prior, const MboParams& params,
                             const std::function<void(std::span<const double>)>& s_observer) {
  if (prior.size() != u.cols()) fail(ErrorCode::DimensionMismatch, "prior length differs from k");
  const std::size_t n = u.rows();
  const std::size_t k = u.cols();
  std::vector<double> s(k, 1.0);
  std::vector<std::size_t> cls(n, 0);
  std::vector<std::size_t> counts(k, 0);
  for (std::size_t it = 0; it < params.s_iters; ++it) {
    scaled_argmax(u, s, cls);
    std::fill(counts.begin(), counts.end(), 0);
    for (const std::size_t c : cls) ++counts[c];
    for (std::size_t j = 0; j < k; ++j) {
      const double bhat = static_cast<double>(counts[j]) / static_cast<double>(n);
      s[j] = std::clamp(s[j] + params.dtau * (prior[j] - bhat), params.s_min, params.s_max);
    }
    if (s_observer) s_observer(s);
  }
  scaled_argmax(u, s, cls);
  NodeMatrix out(n, k);
  for (std::size_t i = 0; i < n; ++i) out(i, cls[i]) = 1.0;
  return out;
}

NodeMatrix mbo_round(const SparseGraph& graph, const NodeMatrix& u, const NodeMatrix& source,
                     const ClassPrior& prior, const MboParams& params, double dt,
                     const std::function<void(std::size_t, const NodeMatrix&)>& inner_observer,
                     const std::function<void(std::span<const double>)>& s_observer) {
  if (u.rows() != graph.size() || !u.same_shape(source)) {
    fail(ErrorCode::DimensionMismatch, "u and source must both be n x k");
  }
  if (!(dt > 0.0)) fail(ErrorCode::InvalidArgument, "dt must be positive");
  NodeMatrix current = u;
  NodeMatrix next(u.rows(), u.cols());
  for (std::size_t inner = 0; inner < params.n_inner; ++inner) {
    kernels::e1_step(graph, current, source, params.mu, dt, next);
    std::swap(current, next);
    if (inner_observer) inner_observer(inner, current);
  }
  return volume_projection(current, prior, params, s_observer);
}

MboResult poisson_mbo(const SparseGraph& graph, const LabelSet& labels, const ClassPrior& prior,
                      const MboParams& params, const PoissonOptions& poisson,
                      const MboObservers& observers) {
  params.validate();
  const std::size_t k = labels.num_classes();
  if (k < 2) fail(ErrorCode::InvalidArgument, "PoissonMBO needs at least two classes");
  if (prior.size() != k) fail(ErrorCode::DimensionMismatch, "prior length differs from k");

  PoissonResult init = poisson_learning(graph, labels, prior, poisson);
  NodeMatrix u = std::move(init.u);
  u *= params.mu;

  const NodeMatrix source =
      poisson.degree_weighted_source ? degree_weighted_source(labels, graph.degrees())
                                     : source_matrix(labels, graph.size());
  const double dt = params.dt.value_or(1.0 / graph.max_degree());
  for (std::size_t outer = 0; outer < params.n_outer; ++outer) {
    std::function<void(std::size_t, const NodeMatrix&)> inner;
    if (observers.inner) {
      inner = [&](std::size_t step, const NodeMatrix& v) { observers.inner(outer, step, v); };
    }
    u = mbo_round(graph, u, source, prior, params, dt, inner, observers.s);
  }

  MboResult out{std::move(u), {}, std::move(init.report)};
  out.classes = label_decision(out.u);
  return out;
}

}  // namespace gssl
