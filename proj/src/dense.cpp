#include "gssl/dense.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "gssl/error.hpp"

namespace gssl::dense {

namespace {

void guard(std::size_t n, std::size_t limit) {
  if (n > limit) {
    fail(ErrorCode::SizeGuard, "dense oracle limited to n <= " + std::to_string(limit) + ", got " +
                                   std::to_string(n));
  }
}

// Householder reduction of a symmetric matrix to tridiagonal form; on return
// d holds the diagonal and e the subdiagonal in e[1..n-1].
void tridiagonalize(DenseMatrix& a, std::vector<double>& d, std::vector<double>& e) {
  const std::size_t n = a.rows();
  d.assign(n, 0.0);
  e.assign(n, 0.0);
  for (std::size_t i = n - 1; i > 0; --i) {
    const std::size_t l = i - 1;
    double h = 0.0;
    if (l > 0) {
      double scale = 0.0;
      for (std::size_t k = 0; k <= l; ++k) scale += std::abs(a(i, k));
      if (scale == 0.0) {
        e[i] = a(i, l);
      } else {
        for (std::size_t k = 0; k <= l; ++k) {
          a(i, k) /= scale;
          h += a(i, k) * a(i, k);
        }
        double f = a(i, l);
        const double g = f >= 0.0 ? -std::sqrt(h) : std::sqrt(h);
        e[i] = scale * g;
        h -= f * g;
        a(i, l) = f - g;
        f = 0.0;
        for (std::size_t j = 0; j <= l; ++j) {
          double acc = 0.0;
          for (std::size_t k = 0; k <= j; ++k) acc += a(j, k) * a(i, k);
          for (std::size_t k = j + 1; k <= l; ++k) acc += a(k, j) * a(i, k);
          e[j] = acc / h;
          f += e[j] * a(i, j);
        }
        const double hh = f / (h + h);
        for (std::size_t j = 0; j <= l; ++j) {
          const double fj = a(i, j);
          const double gj = e[j] - hh * fj;
          e[j] = gj;
          for (std::size_t k = 0; k <= j; ++k) a(j, k) -= fj * e[k] + gj * a(i, k);
        }
      }
    } else {
      e[i] = a(i, l);
    }
    d[i] = h;
  }
  for (std::size_t i = 0; i < n; ++i) d[i] = a(i, i);
}

// Implicit QL on a symmetric tridiagonal matrix; eigenvalues land in d.
void tridiagonal_ql(std::vector<double>& d, std::vector<double>& e) {
  const std::size_t n = d.size();
  if (n == 0) return;
  for (std::size_t i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;
  for (std::size_t l = 0; l < n; ++l) {
    std::size_t iter = 0;
    std::size_t m = l;
    while (true) {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= 1e-15 * dd) break;
      }
      if (m == l) break;
      if (++iter > 60) fail(ErrorCode::InvalidArgument, "eigenvalue iteration did not converge");
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + (g >= 0.0 ? r : -r));
      double s = 1.0;
      double c = 1.0;
      double p = 0.0;
      bool underflow = false;
      for (std::size_t i = m; i-- > l;) {
        double f = s * e[i];
        const double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          underflow = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
      }
      if (underflow) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    }
  }
}

}  // namespace

DenseMatrix dense_laplacian(const SparseGraph& graph) {
  const std::size_t n = graph.size();
  DenseMatrix l(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto cols = graph.neighbors(i);
    const auto ws = graph.neighbor_weights(i);
    for (std::size_t e = 0; e < cols.size(); ++e) {
      if (cols[e] == i) continue;
      l(i, cols[e]) -= ws[e];
      l(i, i) += ws[e];
    }
  }
  return l;
}

void DenseSystem::validate() const {
  const std::size_t n = laplacian.rows();
  if (laplacian.cols() != n || rhs.rows() != n || a.size() != n) {
    fail(ErrorCode::DimensionMismatch, "dense system blocks do not match");
  }
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      row += laplacian(i, j);
      if (std::abs(laplacian(i, j) - laplacian(j, i)) > 1e-12) {
        fail(ErrorCode::InvalidGraph, "dense Laplacian is not symmetric");
      }
    }
    if (std::abs(row) > 1e-10) fail(ErrorCode::InvalidGraph, "dense Laplacian row sum is nonzero");
  }
}

DenseMatrix solve(DenseMatrix a, DenseMatrix b) {
  const std::size_t n = a.rows();
  if (a.cols() != n || b.rows() != n) fail(ErrorCode::DimensionMismatch, "solve: shape mismatch");
  const std::size_t k = b.cols();
  double norm = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) norm = std::max(norm, std::abs(a(i, j)));
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
    }
    if (!(std::abs(a(pivot, col)) > 1e-14 * norm)) {
      fail(ErrorCode::InvalidArgument, "dense system is singular");
    }
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(col, j), a(pivot, j));
      for (std::size_t j = 0; j < k; ++j) std::swap(b(col, j), b(pivot, j));
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a(r, col) / a(col, col);
      if (f == 0.0) continue;
      for (std::size_t j = col; j < n; ++j) a(r, j) -= f * a(col, j);
      for (std::size_t j = 0; j < k; ++j) b(r, j) -= f * b(col, j);
    }
  }
  for (std::size_t r = n; r-- > 0;) {
    for (std::size_t j = 0; j < k; ++j) {
      double acc = b(r, j);
      for (std::size_t c = r + 1; c < n; ++c) acc -= a(r, c) * b(c, j);
      b(r, j) = acc / a(r, r);
    }
  }
  return b;
}

std::vector<double> symmetric_eigenvalues(DenseMatrix a) {
  if (a.rows() != a.cols()) fail(ErrorCode::DimensionMismatch, "matrix is not square");
  std::vector<double> d;
  std::vector<double> e;
  if (a.rows() == 0) return d;
  tridiagonalize(a, d, e);
  tridiagonal_ql(d, e);
  std::sort(d.begin(), d.end());
  return d;
}

NodeMatrix dense_poisson_solve(const SparseGraph& graph, const NodeMatrix& source,
                               std::span<const double> a) {
  const std::size_t n = graph.size();
  guard(n, max_solve_size);
  if (source.rows() != n || a.size() != n) {
    fail(ErrorCode::DimensionMismatch, "source and a must have n rows");
  }
  if (!is_connected(graph)) fail(ErrorCode::DisconnectedGraph, "graph is not connected");
  const std::size_t k = source.cols();

  DenseSystem system{dense_laplacian(graph), DenseMatrix(n, k), {a.begin(), a.end()}};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < k; ++c) system.rhs(i, c) = source(i, c);
  }
  system.validate();

  DenseMatrix bordered(n + 1, n + 1);
  DenseMatrix rhs(n + 1, k);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) bordered(i, j) = system.laplacian(i, j);
    bordered(i, n) = a[i];
    bordered(n, i) = a[i];
    for (std::size_t c = 0; c < k; ++c) rhs(i, c) = system.rhs(i, c);
  }
  const DenseMatrix x = solve(std::move(bordered), std::move(rhs));
  NodeMatrix u(n, k);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < k; ++c) u(i, c) = x(i, c);
  }
  return u;
}

NodeMatrix dense_poisson_solve(const SparseGraph& graph, const LabelSet& labels,
                               std::span<const double> a) {
  labels.check_nodes(graph.size());
  return dense_poisson_solve(graph, source_matrix(labels, graph.size()), a);
}

NodeMatrix dense_laplace_solve(const SparseGraph& graph, const LabelSet& labels) {
  const std::size_t n = graph.size();
  guard(n, max_solve_size);
  if (labels.empty()) fail(ErrorCode::NoLabels, "at least one labeled node is required");
  labels.check_nodes(n);
  const std::size_t k = labels.num_classes();

  const auto component = connected_components(graph);
  std::vector<char> pinned(n, 0);
  std::vector<char> labeled_component(n, 0);
  NodeMatrix u(n, k);
  for (const auto& e : labels.entries()) {
    pinned[e.node] = 1;
    labeled_component[component[e.node]] = 1;
    u(e.node, e.cls) = 1.0;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!labeled_component[component[i]]) {
      fail(ErrorCode::UnlabeledComponent,
           "node " + std::to_string(i) + " lies in a component without labels");
    }
  }

  std::vector<std::size_t> free_index(n, 0);
  std::vector<std::size_t> free_nodes;
  for (std::size_t i = 0; i < n; ++i) {
    if (!pinned[i]) {
      free_index[i] = free_nodes.size();
      free_nodes.push_back(i);
    }
  }
  if (free_nodes.empty()) return u;

  const DenseMatrix l = dense_laplacian(graph);
  const std::size_t f = free_nodes.size();
  DenseMatrix luu(f, f);
  DenseMatrix rhs(f, k);
  for (std::size_t r = 0; r < f; ++r) {
    const std::size_t i = free_nodes[r];
    for (std::size_t j = 0; j < n; ++j) {
      if (pinned[j]) {
        for (std::size_t c = 0; c < k; ++c) rhs(r, c) -= l(i, j) * u(j, c);
      } else {
        luu(r, free_index[j]) = l(i, j);
      }
    }
  }
  const DenseMatrix x = solve(std::move(luu), std::move(rhs));
  for (std::size_t r = 0; r < f; ++r) {
    for (std::size_t c = 0; c < k; ++c) u(free_nodes[r], c) = x(r, c);
  }
  return u;
}

double smallest_nonzero_eigenvalue(const SparseGraph& graph, std::span<const double> a) {
  const std::size_t n = graph.size();
  guard(n, max_eigen_size);
  if (a.size() != n) fail(ErrorCode::DimensionMismatch, "a must have n entries");
  if (n < 2) fail(ErrorCode::InvalidArgument, "need at least two nodes");
  double norm = 0.0;
  for (double v : a) norm += v * v;
  norm = std::sqrt(norm);
  if (!(norm > 0.0)) fail(ErrorCode::InvalidArgument, "weight vector a is zero");

  // Reflector H = I - 2 v v^T / (v^T v) with H a = -sign(a_0)|a| e_0, so
  // columns 1..n-1 of H are an orthonormal basis of the complement of a.
  std::vector<double> v(a.begin(), a.end());
  for (double& x : v) x /= norm;
  v[0] += v[0] >= 0.0 ? 1.0 : -1.0;
  double vv = 0.0;
  for (double x : v) vv += x * x;

  DenseMatrix m = dense_laplacian(graph);
  // m <- H m H, applied as two rank-two updates.
  std::vector<double> w(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) acc += m(i, j) * v[j];
    w[i] = 2.0 * acc / vv;
  }
  double vw = 0.0;
  for (std::size_t i = 0; i < n; ++i) vw += v[i] * w[i];
  const double alpha = vw / vv;
  for (std::size_t i = 0; i < n; ++i) w[i] -= alpha * v[i];
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) -= v[i] * w[j] + w[i] * v[j];
  }

  DenseMatrix restricted(n - 1, n - 1);
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t j = 1; j < n; ++j) restricted(i - 1, j - 1) = 0.5 * (m(i, j) + m(j, i));
  }
  return symmetric_eigenvalues(std::move(restricted)).front();
}

}  // namespace gssl::dense
