#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gssl/graph.hpp"
#include "gssl/labels.hpp"
#include "gssl/node_matrix.hpp"

namespace gssl {

// Antisymmetric k-vector field on the edges of a graph. Only the
// orientation i < j is stored (one k-vector per undirected edge slot);
// V(j, i) is read back as -V(i, j), so antisymmetry holds by construction.
// The field refers to its graph, which must outlive it.
class EdgeField {
 public:
  EdgeField(const SparseGraph& graph, std::size_t channels);

  const SparseGraph& graph() const noexcept { return *graph_; }
  std::size_t channels() const noexcept { return channels_; }

  // Stored orientation (lower index first) for an undirected edge slot.
  std::span<double> slot(std::size_t s) noexcept { return {values_.data() + s * channels_, channels_}; }
  std::span<const double> slot(std::size_t s) const noexcept {
    return {values_.data() + s * channels_, channels_};
  }

  // V(i, j)_c for the CSR entry `entry` of row i; zero on self-loops.
  double at_entry(std::size_t i, std::size_t entry, std::size_t c) const noexcept;
  // V(i, j)_c, zero when (i, j) is not an edge.
  double at(std::size_t i, std::size_t j, std::size_t c) const noexcept;
  // Sets V(i, j) (and implicitly V(j, i) = -V(i, j)). (i, j) must be an edge.
  void set(std::size_t i, std::size_t j, std::span<const double> value);

 private:
  const SparseGraph* graph_;
  std::size_t channels_;
  std::vector<double> values_;
};

// grad u (x_i, x_j) = u(x_j) - u(x_i)
EdgeField gradient(const SparseGraph& graph, const NodeMatrix& u);
// div V (x_i) = sum_j w_ij V(x_i, x_j)
NodeMatrix divergence(const SparseGraph& graph, const EdgeField& field);
// L u (x_i) = sum_j w_ij (u(x_i) - u(x_j))
NodeMatrix laplacian_apply(const SparseGraph& graph, const NodeMatrix& u);

// (u, v) = sum_i u(x_i) . v(x_i)
double node_inner(const NodeMatrix& u, const NodeMatrix& v);
// (V, W) = 1/2 sum_ij w_ij V(x_i, x_j) . W(x_i, x_j)
double edge_inner(const EdgeField& a, const EdgeField& b);
// (1/2 sum_ij w_ij |V(x_i, x_j)|^p)^(1/p), |.| Euclidean on R^k.
double edge_norm_p(const EdgeField& field, double p);

// sum_i a_i u(x_i) / sum_i a_i
std::vector<double> weighted_mean(const NodeMatrix& u, std::span<const double> a);

// 1/2 ||grad u||^2. On one-hot labelings this is the graph-cut energy.
double dirichlet_energy(const SparseGraph& graph, const NodeMatrix& u);
inline double cut_energy(const SparseGraph& graph, const NodeMatrix& u) {
  return dirichlet_energy(graph, u);
}

// Multi-well potential prod_j |v - e_j|^2, zero exactly on the simplex vertices.
double multiwell_potential(std::span<const double> v);

// Ginzburg-Landau energy: 1/2 ||grad u||^2 + (1/tau) sum_i prod_j |u(x_i) - e_j|^2.
double gl_energy(const SparseGraph& graph, const NodeMatrix& u, double tau);

// I_p(u) = (1/p) ||grad u||_p^p - mu sum_j (y_j - ybar) . u(x_j).
double poisson_energy(const SparseGraph& graph, const NodeMatrix& u, const LabelSet& labels,
                      double p, double mu);

}  // namespace gssl
