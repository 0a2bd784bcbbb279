#include "gssl/io.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "gssl/error.hpp"

namespace gssl::io {

namespace {

constexpr std::array<char, 4> feature_magic{'P', 'G', 'F', '1'};
constexpr std::array<char, 4> graph_magic{'P', 'G', 'G', '1'};

void put_u64(std::ostream& out, std::uint64_t v) {
  std::array<char, 8> bytes{};
  for (int b = 0; b < 8; ++b) bytes[b] = static_cast<char>((v >> (8 * b)) & 0xffu);
  out.write(bytes.data(), bytes.size());
}

void put_u32(std::ostream& out, std::uint32_t v) {
  std::array<char, 4> bytes{};
  for (int b = 0; b < 4; ++b) bytes[b] = static_cast<char>((v >> (8 * b)) & 0xffu);
  out.write(bytes.data(), bytes.size());
}

std::uint64_t get_u64(std::istream& in) {
  std::array<unsigned char, 8> bytes{};
  if (!in.read(reinterpret_cast<char*>(bytes.data()), bytes.size())) {
    fail(ErrorCode::Format, "unexpected end of binary file");
  }
  std::uint64_t v = 0;
  for (int b = 7; b >= 0; --b) v = (v << 8) | bytes[b];
  return v;
}

std::uint32_t get_u32(std::istream& in) {
  std::array<unsigned char, 4> bytes{};
  if (!in.read(reinterpret_cast<char*>(bytes.data()), bytes.size())) {
    fail(ErrorCode::Format, "unexpected end of binary file");
  }
  std::uint32_t v = 0;
  for (int b = 3; b >= 0; --b) v = (v << 8) | bytes[b];
  return v;
}

void expect_magic(std::istream& in, const std::array<char, 4>& magic) {
  std::array<char, 4> got{};
  if (!in.read(got.data(), got.size()) || got != magic) {
    fail(ErrorCode::Format, std::string("missing magic bytes ") + std::string(magic.data(), 4));
  }
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::Io, "cannot open " + path.string());
  return in;
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(const std::string& token, std::size_t line) {
  const std::string t = trim(token);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (t.empty() || used != t.size()) {
    fail(ErrorCode::Format, "line " + std::to_string(line) + ": not a number: '" + t + "'");
  }
  return v;
}

std::size_t parse_index(const std::string& token, std::size_t line) {
  const std::string t = trim(token);
  if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos) {
    fail(ErrorCode::Format, "line " + std::to_string(line) + ": not an index: '" + t + "'");
  }
  return static_cast<std::size_t>(std::stoull(t));
}

}  // namespace

FeatureMatrix read_features_csv(std::istream& in) {
  std::vector<double> values;
  std::size_t rows = 0;
  std::size_t dim = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    std::stringstream ss(line);
    std::string token;
    std::size_t count = 0;
    while (std::getline(ss, token, ',')) {
      values.push_back(parse_double(token, line_no));
      ++count;
    }
    if (rows == 0) {
      dim = count;
    } else if (count != dim) {
      fail(ErrorCode::Format, "line " + std::to_string(line_no) + " has " + std::to_string(count) +
                                  " columns, expected " + std::to_string(dim));
    }
    ++rows;
  }
  return FeatureMatrix(rows, dim, std::move(values));
}

FeatureMatrix read_features_binary(std::istream& in) {
  expect_magic(in, feature_magic);
  const std::uint64_t n = get_u64(in);
  const std::uint64_t dim = get_u64(in);
  std::vector<double> values;
  values.reserve(n * dim);
  for (std::uint64_t k = 0; k < n * dim; ++k) {
    values.push_back(static_cast<double>(std::bit_cast<float>(get_u32(in))));
  }
  return FeatureMatrix(n, dim, std::move(values));
}

FeatureMatrix read_features(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::array<char, 4> head{};
  in.read(head.data(), head.size());
  const bool binary = in.gcount() == 4 && head == feature_magic;
  in.clear();
  in.seekg(0);
  return binary ? read_features_binary(in) : read_features_csv(in);
}

void write_features_csv(std::ostream& out, const FeatureMatrix& x) {
  std::ostringstream line;
  line.precision(17);
  for (std::size_t i = 0; i < x.rows(); ++i) {
    line.str({});
    const auto row = x.row(i);
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) line << ',';
      line << row[c];
    }
    out << line.str() << '\n';
  }
}

void write_features_binary(std::ostream& out, const FeatureMatrix& x) {
  out.write(feature_magic.data(), feature_magic.size());
  put_u64(out, x.rows());
  put_u64(out, x.dim());
  for (double v : x.values()) put_u32(out, std::bit_cast<std::uint32_t>(static_cast<float>(v)));
}

SparseGraph read_graph(std::istream& in) {
  expect_magic(in, graph_magic);
  const std::uint64_t n = get_u64(in);
  const std::uint64_t nnz = get_u64(in);
  std::vector<WeightedEdge> entries;
  entries.reserve(nnz);
  for (std::uint64_t k = 0; k < nnz; ++k) {
    WeightedEdge e;
    e.i = get_u64(in);
    e.j = get_u64(in);
    e.w = std::bit_cast<double>(get_u64(in));
    entries.push_back(e);
  }
  return SparseGraph::from_entries(n, entries);
}

SparseGraph read_graph(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_graph(in);
}

void write_graph(std::ostream& out, const SparseGraph& g) {
  out.write(graph_magic.data(), graph_magic.size());
  put_u64(out, g.size());
  put_u64(out, g.num_entries());
  for (const auto& e : g.entries()) {
    put_u64(out, e.i);
    put_u64(out, e.j);
    put_u64(out, std::bit_cast<std::uint64_t>(e.w));
  }
}

void write_graph(const std::filesystem::path& path, const SparseGraph& g) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::Io, "cannot write " + path.string());
  write_graph(out, g);
}

LabelSet read_labels(std::istream& in, std::size_t num_classes) {
  std::vector<LabeledNode> entries;
  std::size_t max_class = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      fail(ErrorCode::Format, "line " + std::to_string(line_no) + ": expected node_index,class_id");
    }
    LabeledNode e{parse_index(line.substr(0, comma), line_no),
                  parse_index(line.substr(comma + 1), line_no)};
    max_class = std::max(max_class, e.cls);
    entries.push_back(e);
  }
  if (num_classes == 0) num_classes = entries.empty() ? 0 : max_class + 1;
  return LabelSet(std::move(entries), num_classes);
}

LabelSet read_labels(const std::filesystem::path& path, std::size_t num_classes) {
  auto in = open_in(path);
  return read_labels(in, num_classes);
}

std::vector<std::size_t> read_truth(std::istream& in) {
  std::vector<std::size_t> truth;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    truth.push_back(parse_index(line, line_no));
  }
  return truth;
}

std::vector<std::size_t> read_truth(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_truth(in);
}

void write_truth(std::ostream& out, const std::vector<std::size_t>& truth) {
  for (std::size_t c : truth) out << c << '\n';
}

}  // namespace gssl::io
