#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace gssl {

// Dense n x k row-major array: one k-vector per graph node. This is the
// state every solver reads and writes.
class NodeMatrix {
 public:
  NodeMatrix() = default;
  NodeMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  NodeMatrix(std::size_t rows, std::size_t cols, std::vector<double> values);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t i, std::size_t c) noexcept { return values_[i * cols_ + c]; }
  double operator()(std::size_t i, std::size_t c) const noexcept { return values_[i * cols_ + c]; }

  std::span<double> row(std::size_t i) noexcept { return {values_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const noexcept {
    return {values_.data() + i * cols_, cols_};
  }

  std::span<double> values() noexcept { return values_; }
  std::span<const double> values() const noexcept { return values_; }

  bool same_shape(const NodeMatrix& other) const noexcept {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }

  // Max-abs entry; 0 for an empty matrix.
  double max_abs() const noexcept;
  bool all_finite() const noexcept;

  NodeMatrix& operator+=(const NodeMatrix& other);
  NodeMatrix& operator-=(const NodeMatrix& other);
  NodeMatrix& operator*=(double scale) noexcept;

  friend bool operator==(const NodeMatrix&, const NodeMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> values_;
};

NodeMatrix operator+(NodeMatrix a, const NodeMatrix& b);
NodeMatrix operator-(NodeMatrix a, const NodeMatrix& b);
NodeMatrix operator*(double scale, NodeMatrix a);

// max_i,c |a(i,c) - b(i,c)|
double max_abs_diff(const NodeMatrix& a, const NodeMatrix& b);

}  // namespace gssl
