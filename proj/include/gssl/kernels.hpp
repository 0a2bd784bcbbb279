#pragma once

// Hot loops of the toolkit. Each kernel exists twice: the OpenMP version in
// `gssl::kernels` used by the solvers, and a plain loop in
// `gssl::kernels::serial` kept as the reference the tests compare against.
// Both evaluate every row with the same arithmetic in the same order, and
// reductions go through fixed-size blocks summed in block order, so results
// are bit-identical for any thread count.

#include <cstddef>
#include <span>
#include <vector>

#include "gssl/graph.hpp"
#include "gssl/node_matrix.hpp"

namespace gssl::kernels {

inline constexpr std::size_t reduction_block = 1024;

// K nearest neighbors of every row (self excluded), sorted by
// (squared distance, index).
struct NeighborTable {
  std::size_t rows = 0;
  std::size_t k = 0;
  std::vector<std::size_t> index;           // rows * k
  std::vector<double> squared_distance;     // rows * k
};

// out = L u
void laplacian_apply(const SparseGraph& g, const NodeMatrix& u, NodeMatrix& out);
// out = u + D^{-1}(source - L u); returns max |source - L u| over the input u.
double poisson_step(const SparseGraph& g, const NodeMatrix& source, const NodeMatrix& u,
                    NodeMatrix& out);
// out_i = sum_j w_ij p_j / d_j
void walk_step(const SparseGraph& g, std::span<const double> p, std::span<double> out);
// out = u - dt (L u - mu source)
void e1_step(const SparseGraph& g, const NodeMatrix& u, const NodeMatrix& source, double mu,
             double dt, NodeMatrix& out);
// Weighted-neighbor average on rows where pinned[i] == 0, copy elsewhere.
// Returns max |out - u|.
double jacobi_sweep(const SparseGraph& g, const NodeMatrix& u, std::span<const char> pinned,
                    NodeMatrix& out);
double dot(std::span<const double> a, std::span<const double> b);
double sum(std::span<const double> a);
NeighborTable knn_search(const FeatureMatrix& x, std::size_t k);

namespace serial {
void laplacian_apply(const SparseGraph& g, const NodeMatrix& u, NodeMatrix& out);
double poisson_step(const SparseGraph& g, const NodeMatrix& source, const NodeMatrix& u,
                    NodeMatrix& out);
void walk_step(const SparseGraph& g, std::span<const double> p, std::span<double> out);
void e1_step(const SparseGraph& g, const NodeMatrix& u, const NodeMatrix& source, double mu,
             double dt, NodeMatrix& out);
double jacobi_sweep(const SparseGraph& g, const NodeMatrix& u, std::span<const char> pinned,
                    NodeMatrix& out);
double dot(std::span<const double> a, std::span<const double> b);
double sum(std::span<const double> a);
NeighborTable knn_search(const FeatureMatrix& x, std::size_t k);
}  // namespace serial

}  // namespace gssl::kernels
