#include "gssl/calculus.hpp"

#include <cmath>
#include <string>

#include "gssl/error.hpp"
#include "gssl/kernels.hpp"

namespace gssl {

namespace {

void check_rows(const SparseGraph& graph, const NodeMatrix& u) {
  if (u.rows() != graph.size()) {
    fail(ErrorCode::DimensionMismatch, "function has " + std::to_string(u.rows()) +
                                           " rows but the graph has " +
                                           std::to_string(graph.size()) + " nodes");
  }
}

// Sum over undirected slots of w * f(slot), in slot order.
template <class F>
double sum_over_edges(const SparseGraph& graph, F&& f) {
  const auto offsets = graph.offsets();
  const auto cols = graph.columns();
  const auto ws = graph.weights();
  const auto slots = graph.slots();
  double total = 0.0;
  for (std::size_t i = 0; i < graph.size(); ++i) {
    for (std::size_t e = offsets[i]; e < offsets[i + 1]; ++e) {
      if (cols[e] > i) total += ws[e] * f(slots[e]);
    }
  }
  return total;
}

// 1/2 sum_ij w_ij |V(x_i, x_j)|^p, i.e. ||V||_p^p.
double edge_power_sum(const EdgeField& field, double p) {
  return sum_over_edges(field.graph(), [&](std::size_t s) {
    const auto x = field.slot(s);
    double sq = 0.0;
    for (double v : x) sq += v * v;
    return p == 2.0 ? sq : std::pow(std::sqrt(sq), p);
  });
}

}  // namespace

EdgeField::EdgeField(const SparseGraph& graph, std::size_t channels)
    : graph_(&graph), channels_(channels), values_(graph.num_edges() * channels, 0.0) {}

double EdgeField::at_entry(std::size_t i, std::size_t entry, std::size_t c) const noexcept {
  const std::size_t s = graph_->slots()[entry];
  if (s == SparseGraph::no_slot) return 0.0;
  const double v = values_[s * channels_ + c];
  return graph_->columns()[entry] > i ? v : -v;
}

double EdgeField::at(std::size_t i, std::size_t j, std::size_t c) const noexcept {
  const std::size_t e = graph_->find_entry(i, j);
  return e == graph_->num_entries() ? 0.0 : at_entry(i, e, c);
}

void EdgeField::set(std::size_t i, std::size_t j, std::span<const double> value) {
  if (value.size() != channels_) fail(ErrorCode::DimensionMismatch, "edge value has wrong length");
  const std::size_t e = graph_->find_entry(i, j);
  if (e == graph_->num_entries() || graph_->slots()[e] == SparseGraph::no_slot) {
    fail(ErrorCode::IndexOutOfRange, "(" + std::to_string(i) + ", " + std::to_string(j) +
                                         ") is not an edge");
  }
  auto dst = slot(graph_->slots()[e]);
  const double sign = j > i ? 1.0 : -1.0;
  for (std::size_t c = 0; c < channels_; ++c) dst[c] = sign * value[c];
}

EdgeField gradient(const SparseGraph& graph, const NodeMatrix& u) {
  check_rows(graph, u);
  EdgeField field(graph, u.cols());
  const auto offsets = graph.offsets();
  const auto cols = graph.columns();
  const auto slots = graph.slots();
  for (std::size_t i = 0; i < graph.size(); ++i) {
    for (std::size_t e = offsets[i]; e < offsets[i + 1]; ++e) {
      const std::size_t j = cols[e];
      if (j <= i) continue;
      auto v = field.slot(slots[e]);
      for (std::size_t c = 0; c < u.cols(); ++c) v[c] = u(j, c) - u(i, c);
    }
  }
  return field;
}

NodeMatrix divergence(const SparseGraph& graph, const EdgeField& field) {
  if (&field.graph() != &graph && (field.graph().size() != graph.size() ||
                                    field.graph().num_entries() != graph.num_entries())) {
    fail(ErrorCode::DimensionMismatch, "edge field belongs to a different graph");
  }
  const std::size_t k = field.channels();
  NodeMatrix out(graph.size(), k);
  const auto offsets = graph.offsets();
  const auto ws = graph.weights();
  for (std::size_t i = 0; i < graph.size(); ++i) {
    for (std::size_t e = offsets[i]; e < offsets[i + 1]; ++e) {
      for (std::size_t c = 0; c < k; ++c) out(i, c) += ws[e] * field.at_entry(i, e, c);
    }
  }
  return out;
}

NodeMatrix laplacian_apply(const SparseGraph& graph, const NodeMatrix& u) {
  check_rows(graph, u);
  NodeMatrix out(u.rows(), u.cols());
  kernels::laplacian_apply(graph, u, out);
  return out;
}

double node_inner(const NodeMatrix& u, const NodeMatrix& v) {
  if (!u.same_shape(v)) fail(ErrorCode::DimensionMismatch, "node functions differ in shape");
  return kernels::dot(u.values(), v.values());
}

double edge_inner(const EdgeField& a, const EdgeField& b) {
  if (&a.graph() != &b.graph() || a.channels() != b.channels()) {
    fail(ErrorCode::DimensionMismatch, "edge fields live on different graphs or channel counts");
  }
  // Both orientations contribute the same product, cancelling the 1/2.
  return sum_over_edges(a.graph(), [&](std::size_t s) {
    const auto x = a.slot(s);
    const auto y = b.slot(s);
    double dot = 0.0;
    for (std::size_t c = 0; c < x.size(); ++c) dot += x[c] * y[c];
    return dot;
  });
}

double edge_norm_p(const EdgeField& field, double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) fail(ErrorCode::InvalidP, "p must be >= 1");
  const double total = edge_power_sum(field, p);
  return p == 2.0 ? std::sqrt(total) : std::pow(total, 1.0 / p);
}

std::vector<double> weighted_mean(const NodeMatrix& u, std::span<const double> a) {
  if (a.size() != u.rows()) fail(ErrorCode::DimensionMismatch, "weight vector length differs");
  double total = 0.0;
  for (double w : a) total += w;
  if (!(total > 0.0)) fail(ErrorCode::NonpositiveWeightSum, "weights must have a positive sum");
  std::vector<double> mean(u.cols(), 0.0);
  for (std::size_t i = 0; i < u.rows(); ++i) {
    for (std::size_t c = 0; c < u.cols(); ++c) mean[c] += a[i] * u(i, c);
  }
  for (double& m : mean) m /= total;
  return mean;
}

double dirichlet_energy(const SparseGraph& graph, const NodeMatrix& u) {
  check_rows(graph, u);
  const auto field = gradient(graph, u);
  return 0.5 * edge_inner(field, field);
}

double multiwell_potential(std::span<const double> v) {
  double product = 1.0;
  for (std::size_t j = 0; j < v.size(); ++j) {
    double sq = 0.0;
    for (std::size_t c = 0; c < v.size(); ++c) {
      const double diff = v[c] - (c == j ? 1.0 : 0.0);
      sq += diff * diff;
    }
    product *= sq;
  }
  return product;
}

double gl_energy(const SparseGraph& graph, const NodeMatrix& u, double tau) {
  if (!(tau > 0.0) || !std::isfinite(tau)) fail(ErrorCode::InvalidTau, "tau must be positive");
  check_rows(graph, u);
  double potential = 0.0;
  for (std::size_t i = 0; i < u.rows(); ++i) potential += multiwell_potential(u.row(i));
  return dirichlet_energy(graph, u) + potential / tau;
}

double poisson_energy(const SparseGraph& graph, const NodeMatrix& u, const LabelSet& labels,
                      double p, double mu) {
  if (!(p > 1.0) || !std::isfinite(p)) fail(ErrorCode::InvalidP, "p must be > 1");
  check_rows(graph, u);
  if (labels.num_classes() != u.cols() && !labels.empty()) {
    fail(ErrorCode::DimensionMismatch, "label classes differ from function channels");
  }
  const auto field = gradient(graph, u);
  const double gradient_term = edge_power_sum(field, p) / p;
  const NodeMatrix source = source_matrix(labels, graph.size());
  double fidelity = 0.0;
  for (const auto& e : labels.entries()) {
    for (std::size_t c = 0; c < u.cols(); ++c) fidelity += source(e.node, c) * u(e.node, c);
  }
  return gradient_term - mu * fidelity;
}

}  // namespace gssl
