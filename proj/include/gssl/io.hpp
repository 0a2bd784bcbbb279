#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "gssl/graph.hpp"
#include "gssl/labels.hpp"

namespace gssl::io {

// Feature files
//   CSV: one point per line, comma-separated decimals, no header.
//   Binary: "PGF1", u64 n, u64 D, then n*D little-endian f32, row-major.
FeatureMatrix read_features_csv(std::istream& in);
FeatureMatrix read_features_binary(std::istream& in);
// Dispatches on the leading magic bytes.
FeatureMatrix read_features(const std::filesystem::path& path);
void write_features_csv(std::ostream& out, const FeatureMatrix& x);
void write_features_binary(std::ostream& out, const FeatureMatrix& x);

// Graph file: "PGG1", u64 n, u64 nnz, then nnz records (u64 i, u64 j, f64 w),
// little-endian, both directions stored. Loading validates symmetry.
SparseGraph read_graph(std::istream& in);
SparseGraph read_graph(const std::filesystem::path& path);
void write_graph(std::ostream& out, const SparseGraph& g);
void write_graph(const std::filesystem::path& path, const SparseGraph& g);

// Label file: lines "node_index,class_id". The class count is taken as
// max(class_id) + 1 unless `num_classes` is nonzero.
LabelSet read_labels(std::istream& in, std::size_t num_classes = 0);
LabelSet read_labels(const std::filesystem::path& path, std::size_t num_classes = 0);

// Ground-truth file: one class id per line, line i for node i.
std::vector<std::size_t> read_truth(std::istream& in);
std::vector<std::size_t> read_truth(const std::filesystem::path& path);
void write_truth(std::ostream& out, const std::vector<std::size_t>& truth);

}  // namespace gssl::io
