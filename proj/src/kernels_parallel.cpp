#include <omp.h>

#include <vector>

#include "gssl/kernels.hpp"
#include "kernel_rows.hpp"

namespace gssl::kernels {

namespace {
using index_t = std::ptrdiff_t;
}

void laplacian_apply(const SparseGraph& g, const NodeMatrix& u, NodeMatrix& out) {
  detail::check_same(g, u, out);
  const auto n = static_cast<index_t>(g.size());
#pragma omp parallel
  {
    std::vector<double> acc(u.cols());
#pragma omp for schedule(static)
    for (index_t i = 0; i < n; ++i) {
      const auto row = static_cast<std::size_t>(i);
      detail::laplacian_row(g, u, row, acc.data());
      for (std::size_t c = 0; c < u.cols(); ++c) out(row, c) = acc[c];
    }
  }
}

double poisson_step(const SparseGraph& g, const NodeMatrix& source, const NodeMatrix& u,
                    NodeMatrix& out) {
  detail::check_same(g, u, out);
  detail::check_same(g, source, out);
  const auto n = static_cast<index_t>(g.size());
  double worst = 0.0;
#pragma omp parallel reduction(max : worst)
  {
    std::vector<double> acc(u.cols());
#pragma omp for schedule(static)
    for (index_t i = 0; i < n; ++i) {
      worst = std::max(worst, detail::poisson_row(g, source, u, out, static_cast<std::size_t>(i),
                                                  acc.data()));
    }
  }
  return worst;
}

void walk_step(const SparseGraph& g, std::span<const double> p, std::span<double> out) {
  const auto n = static_cast<index_t>(g.size());
#pragma omp parallel for schedule(static)
  for (index_t i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = detail::walk_row(g, p, static_cast<std::size_t>(i));
  }
}

void e1_step(const SparseGraph& g, const NodeMatrix& u, const NodeMatrix& source, double mu,
             double dt, NodeMatrix& out) {
  detail::check_same(g, u, out);
  detail::check_same(g, source, out);
  const auto n = static_cast<index_t>(g.size());
#pragma omp parallel
  {
    std::vector<double> acc(u.cols());
#pragma omp for schedule(static)
    for (index_t i = 0; i < n; ++i) {
      detail::e1_row(g, u, source, mu, dt, out, static_cast<std::size_t>(i), acc.data());
    }
  }
}

double jacobi_sweep(const SparseGraph& g, const NodeMatrix& u, std::span<const char> pinned,
                    NodeMatrix& out) {
  detail::check_same(g, u, out);
  const auto n = static_cast<index_t>(g.size());
  double change = 0.0;
#pragma omp parallel for schedule(static) reduction(max : change)
  for (index_t i = 0; i < n; ++i) {
    change = std::max(change, detail::jacobi_row(g, u, pinned, out, static_cast<std::size_t>(i)));
  }
  return change;
}

double dot(std::span<const double> a, std::span<const double> b) {
  const std::size_t blocks = detail::num_blocks(a.size());
  std::vector<double> partial(blocks);
#pragma omp parallel for schedule(static)
  for (index_t blk = 0; blk < static_cast<index_t>(blocks); ++blk) {
    partial[static_cast<std::size_t>(blk)] = detail::dot_block(a, b, static_cast<std::size_t>(blk));
  }
  double total = 0.0;
  for (double v : partial) total += v;
  return total;
}

double sum(std::span<const double> a) {
  const std::size_t blocks = detail::num_blocks(a.size());
  std::vector<double> partial(blocks);
#pragma omp parallel for schedule(static)
  for (index_t blk = 0; blk < static_cast<index_t>(blocks); ++blk) {
    partial[static_cast<std::size_t>(blk)] = detail::sum_block(a, static_cast<std::size_t>(blk));
  }
  double total = 0.0;
  for (double v : partial) total += v;
  return total;
}

NeighborTable knn_search(const FeatureMatrix& x, std::size_t k) {
  detail::check_knn(x, k);
  NeighborTable table = detail::make_table(x, k);
  const auto n = static_cast<index_t>(x.rows());
#pragma omp parallel
  {
    std::vector<std::pair<double, std::size_t>> scratch;
    scratch.reserve(x.rows());
#pragma omp for schedule(dynamic, 64)
    for (index_t i = 0; i < n; ++i) {
      detail::knn_row(x, k, static_cast<std::size_t>(i), scratch, table);
    }
  }
  return table;
}

}  // namespace gssl::kernels
