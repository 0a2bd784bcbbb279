#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "gssl/graph.hpp"
#include "gssl/labels.hpp"
#include "gssl/node_matrix.hpp"
#include "gssl/poisson.hpp"

namespace gssl {

struct MboParams {
  double mu = 1.0;
  std::size_t n_inner = 40;
  std::size_t n_outer = 20;
  // Time step of the inner sweeps; 1 / max_i d_i when unset.
  std::optional<double> dt;
  double dtau = 10.0;
  double s_min = 0.5;
  double s_max = 2.0;
  std::size_t s_iters = 100;

  // Raises InvalidArgument unless mu > 0, 0 < s_min <= 1 <= s_max, dtau > 0,
  // dt > 0 when set, and every count is at least 1.
  void validate() const;
};

// u - dt (L u - mu source). Preserves the uniform mean of u whenever the
// columns of source sum to zero.
NodeMatrix e1_descent_step(const SparseGraph& graph, const NodeMatrix& u, const NodeMatrix& source,
                           double mu, double dt);

// Index of the simplex vertex closest to v, i.e. argmax_j v_j, lowest index
// on ties.
std::size_t simplex_vertex_index(std::span<const double> v);
std::vector<double> simplex_vertex_projection(std::span<const double> v);

// Ascent on the class weights s followed by the row-wise projection of
// U diag(s). Rows of the result are one-hot. `s_observer` sees s after every
// update.
NodeMatrix volume_projection(const NodeMatrix& u, const ClassPrior& prior, const MboParams& params,
                             const std::function<void(std::span<const double>)>& s_observer = {});

// One outer round: n_inner sweeps u <- u - dt (L u - mu source), then the
// volume projection. `dt` must be positive.
NodeMatrix mbo_round(const SparseGraph& graph, const NodeMatrix& u, const NodeMatrix& source,
                     const ClassPrior& prior, const MboParams& params, double dt,
                     const std::function<void(std::size_t, const NodeMatrix&)>& inner_observer = {},
                     const std::function<void(std::span<const double>)>& s_observer = {});

struct MboResult {
  NodeMatrix u;                      // one-hot rows
  std::vector<std::size_t> classes;  // argmax of each row
  SolveReport poisson_report;
};

struct MboObservers {
  // Called after every inner sweep with (outer round, inner step, u).
  std::function<void(std::size_t, std::size_t, const NodeMatrix&)> inner;
  // Called with the weights s after every ascent update.
  std::function<void(std::span<const double>)> s;
};

// Poisson initialization scaled by mu, then n_outer rounds of n_inner
// gradient sweeps on the Dirichlet-plus-fidelity energy followed by the
// volume-constrained projection. Labeled nodes are not pinned.
MboResult poisson_mbo(const SparseGraph& graph, const LabelSet& labels, const ClassPrior& prior,
                      const MboParams& params = {}, const PoissonOptions& poisson = {},
                      const MboObservers& observers = {});

}  // namespace gssl
