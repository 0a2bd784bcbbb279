#include "gssl/node_matrix.hpp"

#include <cmath>

#include "gssl/error.hpp"

namespace gssl {

NodeMatrix::NodeMatrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), values_(rows * cols, fill) {}

NodeMatrix::NodeMatrix(std::size_t rows, std::size_t cols, std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
  if (values_.size() != rows * cols) {
    fail(ErrorCode::DimensionMismatch, "NodeMatrix value count does not match rows*cols");
  }
}

double NodeMatrix::max_abs() const noexcept {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

bool NodeMatrix::all_finite() const noexcept {
  for (double v : values_) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

NodeMatrix& NodeMatrix::operator+=(const NodeMatrix& other) {
  if (!same_shape(other)) fail(ErrorCode::DimensionMismatch, "NodeMatrix shapes differ");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

NodeMatrix& NodeMatrix::operator-=(const NodeMatrix& other) {
  if (!same_shape(other)) fail(ErrorCode::DimensionMismatch, "NodeMatrix shapes differ");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

NodeMatrix& NodeMatrix::operator*=(double scale) noexcept {
  for (double& v : values_) v *= scale;
  return *this;
}

NodeMatrix operator+(NodeMatrix a, const NodeMatrix& b) { return a += b; }
NodeMatrix operator-(NodeMatrix a, const NodeMatrix& b) { return a -= b; }
NodeMatrix operator*(double scale, NodeMatrix a) { return a *= scale; }

double max_abs_diff(const NodeMatrix& a, const NodeMatrix& b) {
  if (!a.same_shape(b)) fail(ErrorCode::DimensionMismatch, "NodeMatrix shapes differ");
  double m = 0.0;
  auto av = a.values();
  auto bv = b.values();
  for (std::size_t i = 0; i < av.size(); ++i) m = std::max(m, std::abs(av[i] - bv[i]));
  return m;
}

}  // namespace gssl
