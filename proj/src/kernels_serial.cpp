#include <vector>

#include "gssl/kernels.hpp"
#include "kernel_rows.hpp"

namespace gssl::kernels::serial {

void laplacian_apply(const SparseGraph& g, const NodeMatrix& u, NodeMatrix& out) {
  detail::check_same(g, u, out);
  std::vector<double> acc(u.cols());
  for (std::size_t i = 0; i < g.size(); ++i) {
    detail::laplacian_row(g, u, i, acc.data());
    for (std::size_t c = 0; c < u.cols(); ++c) out(i, c) = acc[c];
  }
}

double poisson_step(const SparseGraph& g, const NodeMatrix& source, const NodeMatrix& u,
                    NodeMatrix& out) {
  detail::check_same(g, u, out);
  detail::check_same(g, source, out);
  std::vector<double> acc(u.cols());
  double worst = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    worst = std::max(worst, detail::poisson_row(g, source, u, out, i, acc.data()));
  }
  return worst;
}

void walk_step(const SparseGraph& g, std::span<const double> p, std::span<double> out) {
  for (std::size_t i = 0; i < g.size(); ++i) out[i] = detail::walk_row(g, p, i);
}

void e1_step(const SparseGraph& g, const NodeMatrix& u, const NodeMatrix& source, double mu,
             double dt, NodeMatrix& out) {
  detail::check_same(g, u, out);
  detail::check_same(g, source, out);
  std::vector<double> acc(u.cols());
  for (std::size_t i = 0; i < g.size(); ++i) {
    detail::e1_row(g, u, source, mu, dt, out, i, acc.data());
  }
}

double jacobi_sweep(const SparseGraph& g, const NodeMatrix& u, std::span<const char> pinned,
                    NodeMatrix& out) {
  detail::check_same(g, u, out);
  double change = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    change = std::max(change, detail::jacobi_row(g, u, pinned, out, i));
  }
  return change;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double total = 0.0;
  for (std::size_t blk = 0; blk < detail::num_blocks(a.size()); ++blk) {
    total += detail::dot_block(a, b, blk);
  }
  return total;
}

double sum(std::span<const double> a) {
  double total = 0.0;
  for (std::size_t blk = 0; blk < detail::num_blocks(a.size()); ++blk) {
    total += detail::sum_block(a, blk);
  }
  return total;
}

NeighborTable knn_search(const FeatureMatrix& x, std::size_t k) {
  detail::check_knn(x, k);
  NeighborTable table = detail::make_table(x, k);
  std::vector<std::pair<double, std::size_t>> scratch;
  scratch.reserve(x.rows());
  for (std::size_t i = 0; i < x.rows(); ++i) detail::knn_row(x, k, i, scratch, table);
  return table;
}

}  // namespace gssl::kernels::serial
