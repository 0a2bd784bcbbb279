#include "gssl/plaplace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "gssl/calculus.hpp"
#include "gssl/dense.hpp"
#include "gssl/error.hpp"
#include "gssl/kernels.hpp"

namespace gssl {

namespace {

void check_p(double p) {
  if (!(p > 1.0) || !std::isfinite(p)) {
    fail(ErrorCode::InvalidP,
         "p must be finite and > 1; at p = 1 a minimizer need not exist for every mu");
  }
}

// Per-slot edge differences g = u_j - u_i (i < j), their norms, and the
// coefficients |g|^{p-2}.
struct EdgeState {
  std::vector<double> diff;   // slots * k
  std::vector<double> norm;   // slots
  std::vector<double> coeff;  // slots; 0 where the difference vanishes
};

EdgeState edge_state(const SparseGraph& graph, const NodeMatrix& u, double p) {
  const std::size_t k = u.cols();
  EdgeState s;
  s.diff.assign(graph.num_edges() * k, 0.0);
  s.norm.assign(graph.num_edges(), 0.0);
  s.coeff.assign(graph.num_edges(), 0.0);
  const auto offsets = graph.offsets();
  const auto cols = graph.columns();
  const auto slots = graph.slots();
  const std::size_t n = graph.size();
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t e = offsets[i]; e < offsets[i + 1]; ++e) {
      const std::size_t j = cols[e];
      if (j <= i) continue;
      const std::size_t slot = slots[e];
      double sq = 0.0;
      for (std::size_t c = 0; c < k; ++c) {
        const double g = u(j, c) - u(i, c);
        s.diff[slot * k + c] = g;
        sq += g * g;
      }
      const double r = std::sqrt(sq);
      s.norm[slot] = r;
      if (p == 2.0) {
        s.coeff[slot] = 1.0;
      } else if (r > 0.0) {
        s.coeff[slot] = std::pow(r, p - 2.0);
      }
    }
  }
  return s;
}

// out_i = sum_j w_ij coeff_ij (u_i - u_j) - mu source_i, row by row in CSR
// order so the result does not depend on the thread count.
NodeMatrix residual(const SparseGraph& graph, const EdgeState& s, std::size_t k,
                    const NodeMatrix& source, double mu) {
  const std::size_t n = graph.size();
  NodeMatrix out(n, k);
  const auto offsets = graph.offsets();
  const auto cols = graph.columns();
  const auto weights = graph.weights();
  const auto slots = graph.slots();
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t e = offsets[i]; e < offsets[i + 1]; ++e) {
      const std::size_t j = cols[e];
      if (j == i) continue;
      const std::size_t slot = slots[e];
      // Stored difference is u_hi - u_lo; u_i - u_j = -diff when i < j.
      const double sign = i < j ? -1.0 : 1.0;
      const double a = weights[e] * s.coeff[slot] * sign;
      for (std::size_t c = 0; c < k; ++c) out(i, c) += a * s.diff[slot * k + c];
    }
    for (std::size_t c = 0; c < k; ++c) out(i, c) -= mu * source(i, c);
  }
  return out;
}

double energy(const SparseGraph& graph, const EdgeState& s, const NodeMatrix& u,
              const NodeMatrix& source, double p, double mu) {
  const auto offsets = graph.offsets();
  const auto cols = graph.columns();
  const auto weights = graph.weights();
  const auto slots = graph.slots();
  std::vector<double> terms(graph.num_edges(), 0.0);
  for (std::size_t i = 0; i < graph.size(); ++i) {
    for (std::size_t e = offsets[i]; e < offsets[i + 1]; ++e) {
      if (cols[e] <= i) continue;
      const double r = s.norm[slots[e]];
      terms[slots[e]] = weights[e] * (p == 2.0 ? r * r : std::pow(r, p));
    }
  }
  return kernels::sum(terms) / p - mu * kernels::dot(source.values(), u.values());
}

void remove_weighted_mean(NodeMatrix& u, std::span<const double> a) {
  const auto mean = weighted_mean(u, a);
  for (std::size_t i = 0; i < u.rows(); ++i) {
    for (std::size_t c = 0; c < u.cols(); ++c) u(i, c) -= mean[c];
  }
}

// Hessian of I_p at the edge state applied to v: per edge
// w |g|^{p-2} (I + (p-2) g g^T / |g|^2) (v_i - v_j), plus shift * diag(d) v.
// Near-zero differences are floored at `floor` so the p < 2 coefficients
// stay bounded.
void hessian_apply(const SparseGraph& graph, const EdgeState& s, std::size_t k, double p,
                   double floor, double shift, const NodeMatrix& v, NodeMatrix& out) {
  const std::size_t n = graph.size();
  const auto offsets = graph.offsets();
  const auto cols = graph.columns();
  const auto weights = graph.weights();
  const auto slots = graph.slots();
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < k; ++c) out(i, c) = shift * graph.degree(i) * v(i, c);
    for (std::size_t e = offsets[i]; e < offsets[i + 1]; ++e) {
      const std::size_t j = cols[e];
      if (j == i) continue;
      const std::size_t slot = slots[e];
      const double r = std::max(s.norm[slot], floor);
      const double coeff = p == 2.0 ? 1.0 : std::pow(r, p - 2.0);
      double proj = 0.0;
      for (std::size_t c = 0; c < k; ++c) proj += s.diff[slot * k + c] * (v(i, c) - v(j, c));
      const double rank_one =
          p <= 2.0 || s.norm[slot] == 0.0 ? 0.0 : (p - 2.0) * proj / (r * r);
      for (std::size_t c = 0; c < k; ++c) {
        out(i, c) += weights[e] * coeff *
                     ((v(i, c) - v(j, c)) + rank_one * s.diff[slot * k + c]);
      }
    }
  }
}

// Approximate solve of H x = rhs by Jacobi-preconditioned CG.
NodeMatrix newton_direction(const SparseGraph& graph, const EdgeState& s, double p, double floor,
                            double shift, const NodeMatrix& rhs, double rel_tol,
                            std::size_t max_iter) {
  const std::size_t n = graph.size();
  const std::size_t k = rhs.cols();
  std::vector<double> diag(n, 0.0);
  const auto offsets = graph.offsets();
  const auto cols = graph.columns();
  const auto weights = graph.weights();
  const auto slots = graph.slots();
  for (std::size_t i = 0; i < n; ++i) {
    double acc = shift * graph.degree(i);
    for (std::size_t e = offsets[i]; e < offsets[i + 1]; ++e) {
      if (cols[e] == i) continue;
      const double r = std::max(s.norm[slots[e]], floor);
      acc += weights[e] * (p == 2.0 ? 1.0 : std::pow(r, p - 2.0)) * std::max(1.0, p - 1.0);
    }
    diag[i] = acc > 0.0 ? acc : 1.0;
  }

  NodeMatrix x(n, k);
  NodeMatrix r = rhs;
  NodeMatrix z(n, k);
  NodeMatrix q(n, k);
  auto precondition = [&] {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t c = 0; c < k; ++c) z(i, c) = r(i, c) / diag[i];
    }
  };
  precondition();
  NodeMatrix d = z;
  double rz = kernels::dot(r.values(), z.values());
  const double target = rel_tol * r.max_abs();
  for (std::size_t it = 0; it < max_iter && r.max_abs() > target; ++it) {
    hessian_apply(graph, s, k, p, floor, shift, d, q);
    const double dq = kernels::dot(d.values(), q.values());
    if (!(dq > 0.0)) break;
    const double alpha = rz / dq;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t c = 0; c < k; ++c) {
        x(i, c) += alpha * d(i, c);
        r(i, c) -= alpha * q(i, c);
      }
    }
    precondition();
    const double rz_next = kernels::dot(r.values(), z.values());
    const double beta = rz_next / rz;
    rz = rz_next;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t c = 0; c < k; ++c) d(i, c) = z(i, c) + beta * d(i, c);
    }
  }
  // An unconverged CG iterate can still be a descent direction; fall back to
  // the preconditioned gradient if it is not.
  if (!(kernels::dot(x.values(), rhs.values()) > 0.0)) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t c = 0; c < k; ++c) x(i, c) = rhs(i, c) / diag[i];
    }
  }
  return x;
}

}  // namespace

NodeMatrix plap_gradient(const SparseGraph& graph, const NodeMatrix& u, const LabelSet& labels,
                         double p, double mu) {
  check_p(p);
  if (u.rows() != graph.size() || u.cols() != labels.num_classes()) {
    fail(ErrorCode::DimensionMismatch, "u must be n x k");
  }
  labels.check_nodes(graph.size());
  const NodeMatrix source = source_matrix(labels, graph.size());
  return residual(graph, edge_state(graph, u, p), u.cols(), source, mu);
}

PlapResult plap_solve(const SparseGraph& graph, const LabelSet& labels, const PlapParams& params) {
  check_p(params.p);
  if (!(params.mu >= 0.0)) fail(ErrorCode::InvalidArgument, "mu must be nonnegative");
  if (params.step && !(*params.step > 0.0)) fail(ErrorCode::InvalidArgument, "step must be positive");
  check_solvable(graph, labels);
  const std::size_t n = graph.size();
  const std::size_t k = labels.num_classes();
  const double p = params.p;
  const double mu = params.mu;
  const NodeMatrix source = source_matrix(labels, n);
  const std::vector<double> a =
      params.weight == MeanWeight::degrees ? graph.degrees() : std::vector<double>(n, 1.0);

  PlapResult out{NodeMatrix(n, k), {}, false};
  if (mu == 0.0 || labels.classes_present() < 2) {
    // Zero source: the unique mean-zero minimizer is u = 0.
    out.converged = true;
    out.report.cause = StopCause::trivial;
    return out;
  }

  // Start from the p = 2 solution rescaled by the mu^{1/(p-1)} law; it has
  // nonzero differences on generic edges, which the Newton model needs.
  PoissonOptions init;
  init.polish_tolerance = 1e-6;
  NodeMatrix u = poisson_solve(graph, labels, init).u;
  u *= std::pow(mu, 1.0 / (p - 1.0));

  EdgeState state = edge_state(graph, u, p);
  NodeMatrix grad = residual(graph, state, k, source, mu);
  double value = energy(graph, state, u, source, p, mu);
  const double base_step = params.step.value_or(1.0 / graph.max_degree());
  double gnorm = grad.max_abs();

  // Near degenerate edges a residual r only pins u to about r^{1/(p-1)}, so
  // Newton keeps stepping past the residual test until the residual reaches
  // rounding level or the step is negligible.
  const bool polish = params.method == PlapMethod::newton;
  const double noise_floor = 1e-14 * mu * source.max_abs();
  double last_step = std::numeric_limits<double>::infinity();
  auto keep_going = [&] {
    if (gnorm > params.grad_tol) return true;
    return polish && gnorm > noise_floor && last_step > 1e-14 * u.max_abs();
  };
  std::size_t it = 0;
  for (; it < params.max_iter && keep_going(); ++it) {
    NodeMatrix direction(n, k);
    double t = 1.0;
    if (params.method == PlapMethod::newton) {
      const double scale = std::max(u.max_abs(), 1e-300);
      const double floor = 1e-14 * scale;
      const double shift = 1e-12;
      const double rel_tol = p < 2.0 ? std::min(1e-2, 1e-2 * gnorm) : std::min(0.1, std::sqrt(gnorm));
      direction = newton_direction(graph, state, p, floor, shift, grad, rel_tol, 20 * n + 100);
    } else {
      direction = grad;
      t = base_step;
    }
    // Backtracking: halve t until the energy decreases (Armijo with c = 1e-4).
    const double slope = kernels::dot(direction.values(), grad.values());
    bool accepted = false;
    NodeMatrix trial(n, k);
    for (int halvings = 0; halvings < 60; ++halvings, t *= 0.5) {
      trial = u;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t c = 0; c < k; ++c) trial(i, c) -= t * direction(i, c);
      }
      remove_weighted_mean(trial, a);
      EdgeState trial_state = edge_state(graph, trial, p);
      const double trial_value = energy(graph, trial_state, trial, source, p, mu);
      bool take = trial_value <= value - 1e-4 * t * slope;
      NodeMatrix trial_grad;
      if (!take && trial_value <= value + 1e-13 * std::abs(value)) {
        // Energy differences near the minimizer drown in rounding; accept a
        // step that stays level in energy but shrinks the residual.
        trial_grad = residual(graph, trial_state, k, source, mu);
        take = trial_grad.max_abs() < gnorm;
      }
      if (take) {
        last_step = t * direction.max_abs();
        u = std::move(trial);
        state = std::move(trial_state);
        value = trial_value;
        grad = trial_grad.rows() == n ? std::move(trial_grad)
                                      : residual(graph, state, k, source, mu);
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
    gnorm = grad.max_abs();
    if (params.observer) params.observer(it + 1, value);
  }

  out.u = std::move(u);
  out.report.iterations = it;
  out.report.metric = gnorm;
  out.converged = gnorm <= params.grad_tol;
  out.report.cause = out.converged ? StopCause::residual : StopCause::max_iterations;
  if (!out.converged) {
    out.report.warnings.push_back("p-Laplace solve stopped with residual " + std::to_string(gnorm) +
                                  " above tolerance " + std::to_string(params.grad_tol));
  }
  return out;
}

double poincare_constant_p2(const SparseGraph& graph, std::span<const double> a) {
  if (!is_connected(graph)) {
    fail(ErrorCode::DisconnectedGraph, "the Poincare constant vanishes on a disconnected graph");
  }
  const double lambda = dense::smallest_nonzero_eigenvalue(graph, a);
  if (!(lambda > 1e-10 * std::max(1.0, graph.max_degree()))) {
    fail(ErrorCode::DisconnectedGraph, "the Poincare constant vanishes");
  }
  return std::sqrt(lambda);
}

}  // namespace gssl
