#include "gssl/labels.hpp"

#include <algorithm>
#include <string>

#include "gssl/error.hpp"

namespace gssl {

LabelSet::LabelSet(std::vector<LabeledNode> entries, std::size_t num_classes)
    : entries_(std::move(entries)), num_classes_(num_classes) {
  if (num_classes_ == 0 && !entries_.empty()) {
    fail(ErrorCode::InvalidArgument, "a label set needs at least one class");
  }
  std::vector<std::size_t> nodes;
  nodes.reserve(entries_.size());
  for (const auto& e : entries_) {
    if (e.cls >= num_classes_) {
      fail(ErrorCode::IndexOutOfRange, "class id " + std::to_string(e.cls) + " >= k = " +
                                           std::to_string(num_classes_));
    }
    nodes.push_back(e.node);
  }
  std::sort(nodes.begin(), nodes.end());
  if (std::adjacent_find(nodes.begin(), nodes.end()) != nodes.end()) {
    fail(ErrorCode::InvalidArgument, "labeled node indices must be distinct");
  }
}

void LabelSet::check_nodes(std::size_t n) const {
  for (const auto& e : entries_) {
    if (e.node >= n) {
      fail(ErrorCode::IndexOutOfRange, "labeled node " + std::to_string(e.node) +
                                           " outside a graph of " + std::to_string(n) + " nodes");
    }
  }
}

bool LabelSet::contains(std::size_t node) const noexcept {
  return std::any_of(entries_.begin(), entries_.end(),
                     [node](const LabeledNode& e) { return e.node == node; });
}

std::vector<double> LabelSet::mean() const {
  std::vector<double> ybar(num_classes_, 0.0);
  if (entries_.empty()) return ybar;
  const auto counts = class_counts();
  for (std::size_t c = 0; c < num_classes_; ++c) {
    ybar[c] = static_cast<double>(counts[c]) / static_cast<double>(entries_.size());
  }
  return ybar;
}

std::vector<std::size_t> LabelSet::class_counts() const {
  std::vector<std::size_t> counts(num_classes_, 0);
  for (const auto& e : entries_) ++counts[e.cls];
  return counts;
}

std::size_t LabelSet::classes_present() const {
  const auto counts = class_counts();
  return static_cast<std::size_t>(
      std::count_if(counts.begin(), counts.end(), [](std::size_t c) { return c > 0; }));
}

NodeMatrix LabelSet::one_hot() const {
  NodeMatrix f(entries_.size(), num_classes_);
  for (std::size_t j = 0; j < entries_.size(); ++j) f(j, entries_[j].cls) = 1.0;
  return f;
}

NodeMatrix source_matrix(const LabelSet& labels, std::size_t n) {
  labels.check_nodes(n);
  const std::size_t k = labels.num_classes();
  const auto ybar = labels.mean();
  NodeMatrix b(n, k);
  for (const auto& e : labels.entries()) {
    for (std::size_t c = 0; c < k; ++c) b(e.node, c) = (c == e.cls ? 1.0 : 0.0) - ybar[c];
  }
  return b;
}

std::vector<double> ybar_w(const LabelSet& labels, std::span<const double> degrees) {
  labels.check_nodes(degrees.size());
  std::vector<double> mean(labels.num_classes(), 0.0);
  double total = 0.0;
  for (const auto& e : labels.entries()) {
    const double d = degrees[e.node];
    if (!(d > 0.0)) {
      fail(ErrorCode::ZeroDegreeNode, "labeled node " + std::to_string(e.node) + " has degree 0");
    }
    mean[e.cls] += d;
    total += d;
  }
  if (total > 0.0) {
    for (double& v : mean) v /= total;
  }
  return mean;
}

NodeMatrix degree_weighted_source(const LabelSet& labels, std::span<const double> degrees) {
  const auto mean = ybar_w(labels, degrees);
  const std::size_t k = labels.num_classes();
  NodeMatrix b(degrees.size(), k);
  for (const auto& e : labels.entries()) {
    const double d = degrees[e.node];
    for (std::size_t c = 0; c < k; ++c) b(e.node, c) = d * ((c == e.cls ? 1.0 : 0.0) - mean[c]);
  }
  return b;
}

}  // namespace gssl
