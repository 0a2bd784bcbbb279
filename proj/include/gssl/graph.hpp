#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace gssl {

// One stored weight. `SparseGraph::from_entries` expects both directions of
// every edge; `from_edges` mirrors each triplet itself.
struct WeightedEdge {
  std::size_t i = 0;
  std::size_t j = 0;
  double w = 0.0;
};

// Symmetric, nonnegative, weighted graph in compressed sparse row form.
//
// Neighbor lists are sorted by index and hold only strictly positive
// weights. Degrees are cached at construction by summing each row in
// ascending neighbor order. Instances are immutable once built and may be
// shared freely between threads.
//
// Every off-diagonal entry (i, j) is also assigned an undirected edge slot:
// entries (i, j) and (j, i) map to the same slot. Self-loops carry no slot
// (`no_slot`), since an antisymmetric edge field vanishes on them.
class SparseGraph {
 public:
  static constexpr std::size_t no_slot = std::numeric_limits<std::size_t>::max();

  SparseGraph() = default;

  // Graph with `n` nodes and no edges.
  explicit SparseGraph(std::size_t n);

  // Each triplet is inserted in both directions; duplicates are summed.
  // A self-loop triplet (i, i, w) adds w once to the diagonal.
  static SparseGraph from_edges(std::size_t n, std::span<const WeightedEdge> edges);

  // Entries are taken as given (duplicates summed) and must already be
  // symmetric bit-for-bit; anything else raises InvalidGraph.
  static SparseGraph from_entries(std::size_t n, std::span<const WeightedEdge> entries);

  std::size_t size() const noexcept { return degrees_.size(); }
  std::size_t num_entries() const noexcept { return columns_.size(); }
  // Undirected off-diagonal edge count.
  std::size_t num_edges() const noexcept { return num_slots_; }

  std::span<const std::size_t> offsets() const noexcept { return offsets_; }
  std::span<const std::size_t> columns() const noexcept { return columns_; }
  std::span<const double> weights() const noexcept { return weights_; }
  std::span<const std::size_t> slots() const noexcept { return slots_; }

  std::span<const std::size_t> neighbors(std::size_t i) const noexcept {
    return {columns_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
  }
  std::span<const double> neighbor_weights(std::size_t i) const noexcept {
    return {weights_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
  }

  const std::vector<double>& degrees() const noexcept { return degrees_; }
  double degree(std::size_t i) const noexcept { return degrees_[i]; }
  double max_degree() const noexcept;

  // Stored weight of (i, j), 0 if absent. Binary search in row i.
  double weight(std::size_t i, std::size_t j) const noexcept;
  // Entry index of (i, j) in the CSR arrays, or num_entries() if absent.
  std::size_t find_entry(std::size_t i, std::size_t j) const noexcept;

  bool has_self_loops() const noexcept;
  SparseGraph without_self_loops() const;
  SparseGraph scaled(double factor) const;

  // All stored entries in row-major order (both directions).
  std::vector<WeightedEdge> entries() const;

 private:
  static SparseGraph assemble(std::size_t n, std::vector<WeightedEdge> entries);
  void finalize();

  std::vector<std::size_t> offsets_{0};
  std::vector<std::size_t> columns_;
  std::vector<double> weights_;
  std::vector<std::size_t> slots_;
  std::vector<double> degrees_;
  std::size_t num_slots_ = 0;
};

// n x D feature vectors, row-major. All entries must be finite.
class FeatureMatrix {
 public:
  FeatureMatrix() = default;
  FeatureMatrix(std::size_t rows, std::size_t dim, std::vector<double> values);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t dim() const noexcept { return dim_; }
  std::span<const double> row(std::size_t i) const noexcept {
    return {values_.data() + i * dim_, dim_};
  }
  std::span<const double> values() const noexcept { return values_; }

 private:
  std::size_t rows_ = 0;
  std::size_t dim_ = 0;
  std::vector<double> values_;
};

// True iff every node is reachable from node 0 through positive-weight
// edges. A graph with zero or one node is connected.
bool is_connected(const SparseGraph& graph);

// Component id per node (ids assigned in order of smallest member).
std::vector<std::size_t> connected_components(const SparseGraph& graph);

// Cached degree vector, d_i = sum_j w_ij.
const std::vector<double>& degrees(const SparseGraph& graph);

}  // namespace gssl
