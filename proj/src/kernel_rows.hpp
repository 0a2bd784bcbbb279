#pragma once

// Per-row bodies shared by the serial and OpenMP kernels.

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "gssl/error.hpp"
#include "gssl/kernels.hpp"

namespace gssl::kernels::detail {

inline void check_same(const SparseGraph& g, const NodeMatrix& u, const NodeMatrix& out) {
  if (u.rows() != g.size() || !u.same_shape(out)) {
    fail(ErrorCode::DimensionMismatch, "node matrix does not match the graph");
  }
}

// acc[c] = sum_j w_ij (u_i - u_j), neighbors in ascending order.
inline void laplacian_row(const SparseGraph& g, const NodeMatrix& u, std::size_t i, double* acc) {
  const std::size_t k = u.cols();
  for (std::size_t c = 0; c < k; ++c) acc[c] = 0.0;
  const auto cols = g.neighbors(i);
  const auto ws = g.neighbor_weights(i);
  const double* ui = u.row(i).data();
  for (std::size_t e = 0; e < cols.size(); ++e) {
    const double* uj = u.row(cols[e]).data();
    for (std::size_t c = 0; c < k; ++c) acc[c] += ws[e] * (ui[c] - uj[c]);
  }
}

inline double poisson_row(const SparseGraph& g, const NodeMatrix& source, const NodeMatrix& u,
                          NodeMatrix& out, std::size_t i, double* acc) {
  laplacian_row(g, u, i, acc);
  const double inv_d = 1.0 / g.degree(i);
  double worst = 0.0;
  for (std::size_t c = 0; c < u.cols(); ++c) {
    const double r = source(i, c) - acc[c];
    worst = std::max(worst, std::abs(r));
    out(i, c) = u(i, c) + inv_d * r;
  }
  return worst;
}

inline double walk_row(const SparseGraph& g, std::span<const double> p, std::size_t i) {
  const auto cols = g.neighbors(i);
  const auto ws = g.neighbor_weights(i);
  double acc = 0.0;
  for (std::size_t e = 0; e < cols.size(); ++e) acc += ws[e] * (p[cols[e]] / g.degree(cols[e]));
  return acc;
}

inline void e1_row(const SparseGraph& g, const NodeMatrix& u, const NodeMatrix& source, double mu,
                   double dt, NodeMatrix& out, std::size_t i, double* acc) {
  laplacian_row(g, u, i, acc);
  for (std::size_t c = 0; c < u.cols(); ++c) {
    out(i, c) = u(i, c) - dt * (acc[c] - mu * source(i, c));
  }
}

inline double jacobi_row(const SparseGraph& g, const NodeMatrix& u, std::span<const char> pinned,
                         NodeMatrix& out, std::size_t i) {
  const std::size_t k = u.cols();
  if (pinned[i] || g.degree(i) == 0.0) {
    for (std::size_t c = 0; c < k; ++c) out(i, c) = u(i, c);
    return 0.0;
  }
  const auto cols = g.neighbors(i);
  const auto ws = g.neighbor_weights(i);
  double* o = out.row(i).data();
  for (std::size_t c = 0; c < k; ++c) o[c] = 0.0;
  for (std::size_t e = 0; e < cols.size(); ++e) {
    const double* uj = u.row(cols[e]).data();
    for (std::size_t c = 0; c < k; ++c) o[c] += ws[e] * uj[c];
  }
  double change = 0.0;
  const double inv_d = 1.0 / g.degree(i);
  for (std::size_t c = 0; c < k; ++c) {
    o[c] *= inv_d;
    change = std::max(change, std::abs(o[c] - u(i, c)));
  }
  return change;
}

inline double dot_block(std::span<const double> a, std::span<const double> b, std::size_t block) {
  const std::size_t lo = block * reduction_block;
  const std::size_t hi = std::min(a.size(), lo + reduction_block);
  double acc = 0.0;
  for (std::size_t i = lo; i < hi; ++i) acc += a[i] * b[i];
  return acc;
}

inline double sum_block(std::span<const double> a, std::size_t block) {
  const std::size_t lo = block * reduction_block;
  const std::size_t hi = std::min(a.size(), lo + reduction_block);
  double acc = 0.0;
  for (std::size_t i = lo; i < hi; ++i) acc += a[i];
  return acc;
}

inline std::size_t num_blocks(std::size_t n) { return (n + reduction_block - 1) / reduction_block; }

inline void check_knn(const FeatureMatrix& x, std::size_t k) {
  if (x.rows() < 2) fail(ErrorCode::EmptyInput, "k-NN search needs at least two points");
  if (k == 0) fail(ErrorCode::InvalidArgument, "K must be positive");
  if (k >= x.rows()) fail(ErrorCode::KTooLarge, "K must be smaller than the number of points");
}

// Fills the K nearest (squared distance, index) pairs of row i, self excluded,
// ties broken by lower index. `scratch` is reused across calls.
inline void knn_row(const FeatureMatrix& x, std::size_t k, std::size_t i,
                    std::vector<std::pair<double, std::size_t>>& scratch, NeighborTable& out) {
  const std::size_t n = x.rows();
  const std::size_t dim = x.dim();
  scratch.clear();
  const double* xi = x.row(i).data();
  for (std::size_t j = 0; j < n; ++j) {
    if (j == i) continue;
    const double* xj = x.row(j).data();
    double sq = 0.0;
    for (std::size_t c = 0; c < dim; ++c) {
      const double diff = xi[c] - xj[c];
      sq += diff * diff;
    }
    scratch.emplace_back(sq, j);
  }
  auto kth = scratch.begin() + static_cast<std::ptrdiff_t>(k);
  std::nth_element(scratch.begin(), kth - 1, scratch.end());
  std::sort(scratch.begin(), kth);
  for (std::size_t r = 0; r < k; ++r) {
    out.squared_distance[i * k + r] = scratch[r].first;
    out.index[i * k + r] = scratch[r].second;
  }
}

inline NeighborTable make_table(const FeatureMatrix& x, std::size_t k) {
  NeighborTable t;
  t.rows = x.rows();
  t.k = k;
  t.index.resize(t.rows * k);
  t.squared_distance.resize(t.rows * k);
  return t;
}

}  // namespace gssl::kernels::detail
