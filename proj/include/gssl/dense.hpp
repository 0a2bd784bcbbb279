#pragma once

// Small dense linear algebra used as ground truth for the iterative solvers.
// Single-threaded and O(n^3); intended for n in the hundreds.

#include <cstddef>
#include <span>
#include <vector>

#include "gssl/graph.hpp"
#include "gssl/labels.hpp"
#include "gssl/node_matrix.hpp"

namespace gssl::dense {

inline constexpr std::size_t max_solve_size = 5000;
inline constexpr std::size_t max_eigen_size = 2000;

class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), values_(rows * cols, fill) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double& operator()(std::size_t i, std::size_t j) noexcept { return values_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return values_[i * cols_ + j]; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> values_;
};

DenseMatrix dense_laplacian(const SparseGraph& graph);

// Laplacian, right-hand side and mean-zero weight vector of a Poisson problem.
struct DenseSystem {
  DenseMatrix laplacian;
  DenseMatrix rhs;
  std::vector<double> a;

  // Raises InvalidGraph unless the matrix is symmetric within 1e-12 and its
  // row sums vanish within 1e-10.
  void validate() const;
};

// Solves A X = B by Gaussian elimination with partial pivoting. Raises
// InvalidArgument on a (numerically) singular matrix.
DenseMatrix solve(DenseMatrix a, DenseMatrix b);

// Eigenvalues of a symmetric matrix in ascending order (Householder
// tridiagonalization followed by implicit QL).
std::vector<double> symmetric_eigenvalues(DenseMatrix a);

// L u = source with sum_i a_i u(x_i) = 0, via the bordered system
// [L a; a^T 0]. Raises SizeGuard above max_solve_size and DisconnectedGraph
// when the graph is not connected.
NodeMatrix dense_poisson_solve(const SparseGraph& graph, const NodeMatrix& source,
                               std::span<const double> a);
// Same with the point sources of `labels`.
NodeMatrix dense_poisson_solve(const SparseGraph& graph, const LabelSet& labels,
                               std::span<const double> a);

// Harmonic extension with labeled rows pinned to their one-hot labels.
// Raises UnlabeledComponent if some connected component has no label.
NodeMatrix dense_laplace_solve(const SparseGraph& graph, const LabelSet& labels);

// Smallest eigenvalue of L restricted to {u : a^T u = 0}. Zero (up to
// rounding) for a disconnected graph. Raises SizeGuard above max_eigen_size.
double smallest_nonzero_eigenvalue(const SparseGraph& graph, std::span<const double> a);

}  // namespace gssl::dense
