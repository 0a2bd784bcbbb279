#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gssl/node_matrix.hpp"

namespace gssl {

struct LabeledNode {
  std::size_t node = 0;
  std::size_t cls = 0;

  friend bool operator==(const LabeledNode&, const LabeledNode&) = default;
};

// m labeled nodes with classes in {0..k-1}. Node indices are distinct.
class LabelSet {
 public:
  LabelSet() = default;
  LabelSet(std::vector<LabeledNode> entries, std::size_t num_classes);

  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  std::size_t num_classes() const noexcept { return num_classes_; }
  std::span<const LabeledNode> entries() const noexcept { return entries_; }

  // Raises IndexOutOfRange if any node index is >= n.
  void check_nodes(std::size_t n) const;
  bool contains(std::size_t node) const noexcept;

  // Label mean ybar = (1/m) sum_j y_j.
  std::vector<double> mean() const;
  std::vector<std::size_t> class_counts() const;
  // Number of distinct classes that actually occur.
  std::size_t classes_present() const;
  // m x k one-hot matrix; row j is y_j.
  NodeMatrix one_hot() const;

  friend bool operator==(const LabelSet&, const LabelSet&) = default;

 private:
  std::vector<LabeledNode> entries_;
  std::size_t num_classes_ = 0;
};

// Point sources of the Poisson equation: row i = sum_j (y_j - ybar) delta_ij.
NodeMatrix source_matrix(const LabelSet& labels, std::size_t n);

// Degree-weighted label mean over the labeled nodes:
// ybar_w = sum_j d_j y_j / sum_j d_j.
std::vector<double> ybar_w(const LabelSet& labels, std::span<const double> degrees);

// Degree-weighted sources: row i = sum_j d_j (y_j - ybar_w) delta_ij.
NodeMatrix degree_weighted_source(const LabelSet& labels, std::span<const double> degrees);

}  // namespace gssl
