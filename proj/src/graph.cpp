#include "gssl/graph.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gssl/error.hpp"

namespace gssl {

namespace {

void check_entry(std::size_t n, const WeightedEdge& e) {
  if (e.i >= n || e.j >= n) {
    fail(ErrorCode::IndexOutOfRange, "edge (" + std::to_string(e.i) + ", " + std::to_string(e.j) +
                                         ") outside a graph of " + std::to_string(n) + " nodes");
  }
  if (!std::isfinite(e.w) || e.w < 0.0) {
    fail(ErrorCode::InvalidGraph, "edge weights must be finite and nonnegative");
  }
}

}  // namespace

SparseGraph::SparseGraph(std::size_t n) : offsets_(n + 1, 0), degrees_(n, 0.0) {}

SparseGraph SparseGraph::from_edges(std::size_t n, std::span<const WeightedEdge> edges) {
  std::vector<WeightedEdge> entries;
  entries.reserve(2 * edges.size());
  for (const auto& e : edges) {
    check_entry(n, e);
    entries.push_back(e);
    if (e.i != e.j) entries.push_back({e.j, e.i, e.w});
  }
  return assemble(n, std::move(entries));
}

SparseGraph SparseGraph::from_entries(std::size_t n, std::span<const WeightedEdge> entries) {
  for (const auto& e : entries) check_entry(n, e);
  SparseGraph g = assemble(n, {entries.begin(), entries.end()});
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t e = g.offsets_[i]; e < g.offsets_[i + 1]; ++e) {
      if (g.weight(g.columns_[e], i) != g.weights_[e]) {
        fail(ErrorCode::InvalidGraph, "weight matrix is not symmetric at (" + std::to_string(i) +
                                          ", " + std::to_string(g.columns_[e]) + ")");
      }
    }
  }
  return g;
}

SparseGraph SparseGraph::assemble(std::size_t n, std::vector<WeightedEdge> entries) {
  std::stable_sort(entries.begin(), entries.end(),
                   [](const WeightedEdge& a, const WeightedEdge& b) {
                     return a.i != b.i ? a.i < b.i : a.j < b.j;
                   });

  SparseGraph g(n);
  g.columns_.reserve(entries.size());
  g.weights_.reserve(entries.size());
  std::vector<std::size_t> counts(n, 0);
  for (std::size_t k = 0; k < entries.size();) {
    // Duplicates are summed in input order (the sort is stable).
    std::size_t end = k;
    double w = 0.0;
    while (end < entries.size() && entries[end].i == entries[k].i && entries[end].j == entries[k].j) {
      w += entries[end].w;
      ++end;
    }
    if (w > 0.0) {
      g.columns_.push_back(entries[k].j);
      g.weights_.push_back(w);
      ++counts[entries[k].i];
    }
    k = end;
  }
  for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] = g.offsets_[i] + counts[i];
  g.finalize();
  return g;
}

void SparseGraph::finalize() {
  const std::size_t n = size();
  for (std::size_t i = 0; i < n; ++i) {
    double d = 0.0;
    for (std::size_t e = offsets_[i]; e < offsets_[i + 1]; ++e) d += weights_[e];
    degrees_[i] = d;
  }

  slots_.assign(columns_.size(), no_slot);
  num_slots_ = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t e = offsets_[i]; e < offsets_[i + 1]; ++e) {
      if (columns_[e] > i) slots_[e] = num_slots_++;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t e = offsets_[i]; e < offsets_[i + 1]; ++e) {
      const std::size_t j = columns_[e];
      if (j < i) {
        const std::size_t mirror = find_entry(j, i);
        if (mirror != num_entries()) slots_[e] = slots_[mirror];
      }
    }
  }
}

double SparseGraph::max_degree() const noexcept {
  double m = 0.0;
  for (double d : degrees_) m = std::max(m, d);
  return m;
}

std::size_t SparseGraph::find_entry(std::size_t i, std::size_t j) const noexcept {
  if (i >= size()) return num_entries();
  auto first = columns_.begin() + static_cast<std::ptrdiff_t>(offsets_[i]);
  auto last = columns_.begin() + static_cast<std::ptrdiff_t>(offsets_[i + 1]);
  auto it = std::lower_bound(first, last, j);
  if (it == last || *it != j) return num_entries();
  return static_cast<std::size_t>(it - columns_.begin());
}

double SparseGraph::weight(std::size_t i, std::size_t j) const noexcept {
  const std::size_t e = find_entry(i, j);
  return e == num_entries() ? 0.0 : weights_[e];
}

bool SparseGraph::has_self_loops() const noexcept {
  for (std::size_t i = 0; i < size(); ++i) {
    if (find_entry(i, i) != num_entries()) return true;
  }
  return false;
}

std::vector<WeightedEdge> SparseGraph::entries() const {
  std::vector<WeightedEdge> out;
  out.reserve(num_entries());
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t e = offsets_[i]; e < offsets_[i + 1]; ++e) {
      out.push_back({i, columns_[e], weights_[e]});
    }
  }
  return out;
}

SparseGraph SparseGraph::without_self_loops() const {
  auto all = entries();
  std::erase_if(all, [](const WeightedEdge& e) { return e.i == e.j; });
  return assemble(size(), std::move(all));
}

SparseGraph SparseGraph::scaled(double factor) const {
  if (!(factor > 0.0) || !std::isfinite(factor)) {
    fail(ErrorCode::InvalidArgument, "graph scale factor must be positive and finite");
  }
  SparseGraph g = *this;
  for (double& w : g.weights_) w *= factor;
  g.finalize();
  return g;
}

FeatureMatrix::FeatureMatrix(std::size_t rows, std::size_t dim, std::vector<double> values)
    : rows_(rows), dim_(dim), values_(std::move(values)) {
  if (values_.size() != rows * dim) {
    fail(ErrorCode::DimensionMismatch, "feature value count does not match n*D");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) fail(ErrorCode::Format, "feature matrix contains a non-finite value");
  }
}

std::vector<std::size_t> connected_components(const SparseGraph& graph) {
  constexpr std::size_t unseen = std::numeric_limits<std::size_t>::max();
  const std::size_t n = graph.size();
  std::vector<std::size_t> component(n, unseen);
  std::vector<std::size_t> stack;
  std::size_t next = 0;
  for (std::size_t root = 0; root < n; ++root) {
    if (component[root] != unseen) continue;
    component[root] = next;
    stack.push_back(root);
    while (!stack.empty()) {
      const std::size_t i = stack.back();
      stack.pop_back();
      for (std::size_t j : graph.neighbors(i)) {
        if (component[j] == unseen) {
          component[j] = next;
          stack.push_back(j);
        }
      }
    }
    ++next;
  }
  return component;
}

bool is_connected(const SparseGraph& graph) {
  const auto component = connected_components(graph);
  return std::all_of(component.begin(), component.end(), [](std::size_t c) { return c == 0; });
}

const std::vector<double>& degrees(const SparseGraph& graph) { return graph.degrees(); }

}  // namespace gssl
