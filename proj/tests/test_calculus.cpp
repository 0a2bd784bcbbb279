#include <cmath>
#include <vector>

#include "doctest.h"
#include "gssl/calculus.hpp"
#include "gssl/error.hpp"
#include "support.hpp"

using namespace gssl;

namespace {

NodeMatrix column(std::vector<double> v) {
  const std::size_t n = v.size();
  return NodeMatrix(n, 1, std::move(v));
}

EdgeField random_field(const SparseGraph& g, std::size_t k, rng::Engine& engine) {
  EdgeField v(g, k);
  for (std::size_t s = 0; s < g.num_edges(); ++s) {
    for (double& x : v.slot(s)) x = testing::uniform(engine, -1.0, 1.0);
  }
  return v;
}

double rel(double a, double b) { return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}); }

}  // namespace

TEST_CASE("gradient on the path") {
  const auto g = testing::path_graph(3);
  const auto grad = gradient(g, column({0, 1, 3}));
  CHECK(grad.at(0, 1, 0) == 1.0);
  CHECK(grad.at(1, 2, 0) == 2.0);
  CHECK(grad.at(1, 0, 0) == -1.0);
  CHECK(grad.at(0, 2, 0) == 0.0);
}

TEST_CASE("gradient of a constant vanishes and ignores shifts") {
  rng::Engine engine(1);
  const auto g = testing::random_connected_graph(20, engine);
  const auto u = testing::random_matrix(20, 2, engine);
  auto shifted = u;
  for (std::size_t i = 0; i < 20; ++i) {
    shifted(i, 0) += 3.0;
    shifted(i, 1) -= 1.5;
  }
  const auto a = gradient(g, u);
  const auto b = gradient(g, shifted);
  for (std::size_t s = 0; s < g.num_edges(); ++s) {
    for (std::size_t c = 0; c < 2; ++c) CHECK(a.slot(s)[c] == doctest::Approx(b.slot(s)[c]));
  }
  const auto zero = gradient(g, NodeMatrix(20, 2, 4.0));
  for (std::size_t s = 0; s < g.num_edges(); ++s) CHECK(zero.slot(s)[0] == 0.0);
}

TEST_CASE("divergence on the path") {
  const auto g = testing::path_graph(3);
  EdgeField v(g, 1);
  v.set(0, 1, std::vector<double>{1.0});
  v.set(1, 2, std::vector<double>{2.0});
  const auto div = divergence(g, v);
  CHECK(div == column({1, 1, -2}));
  CHECK(divergence(g, gradient(g, column({0, 1, 3}))) == column({1, 1, -2}));
  CHECK(divergence(g, EdgeField(g, 1)) == column({0, 0, 0}));
}

TEST_CASE("laplacian on the path") {
  const auto g = testing::path_graph(3);
  CHECK(laplacian_apply(g, column({0, 1, 3})) == column({-1, -1, 2}));
  CHECK(laplacian_apply(g, column({5, 5, 5})) == column({0, 0, 0}));
}

TEST_CASE("edge norms") {
  const auto g = testing::path_graph(3);
  const auto grad = gradient(g, column({0, 1, 3}));
  CHECK(edge_norm_p(grad, 2.0) == doctest::Approx(std::sqrt(5.0)));
  CHECK(edge_norm_p(EdgeField(g, 1), 3.0) == 0.0);
  CHECK(edge_norm_p(grad, 1.0) == doctest::Approx(3.0));
  CHECK_THROWS_AS(edge_norm_p(grad, 0.5), Error);
}

TEST_CASE("weighted mean") {
  CHECK(weighted_mean(column({0, 1, 3}), std::vector<double>{1, 2, 1})[0] == 1.25);
  CHECK(weighted_mean(column({2, 2}), std::vector<double>{0.3, 0.1})[0] == doctest::Approx(2.0));
  CHECK(weighted_mean(column({1, 2, 6}), std::vector<double>{1, 1, 1})[0] == 3.0);
  CHECK_THROWS_AS(weighted_mean(column({1, 2}), std::vector<double>{1}), Error);
  CHECK_THROWS_AS(weighted_mean(column({1, 2}), std::vector<double>{0, 0}), Error);
}

TEST_CASE("dirichlet and Ginzburg-Landau energies") {
  const auto g = testing::path_graph(3);
  const NodeMatrix labeling(3, 2, {1, 0, 1, 0, 0, 1});
  CHECK(dirichlet_energy(g, labeling) == doctest::Approx(1.0));
  CHECK(cut_energy(g, NodeMatrix(3, 2, {1, 0, 1, 0, 1, 0})) == 0.0);
  const NodeMatrix swapped(3, 2, {0, 1, 0, 1, 1, 0});
  CHECK(dirichlet_energy(g, swapped) == dirichlet_energy(g, labeling));

  CHECK(gl_energy(g, labeling, 0.01) == doctest::Approx(dirichlet_energy(g, labeling)));
  const SparseGraph single(1);
  CHECK(gl_energy(single, NodeMatrix(1, 2, {0.5, 0.5}), 1.0) == doctest::Approx(0.25));
  CHECK(multiwell_potential(std::vector<double>{0.5, 0.5}) == doctest::Approx(0.25));
  const NodeMatrix fuzzy(3, 2, {0.3, 0.6, 0.5, 0.5, 0.1, 0.8});
  CHECK(gl_energy(g, fuzzy, 0.5) >= gl_energy(g, fuzzy, 1.0));
  CHECK_THROWS_AS(gl_energy(g, fuzzy, 0.0), Error);
}

TEST_CASE("poisson energy") {
  const auto g = testing::path_graph(3);
  const LabelSet labels({{0, 0}, {2, 1}}, 2);
  CHECK(poisson_energy(g, NodeMatrix(3, 2), labels, 2.0, 1.0) == 0.0);
  // Minimizer from the hand-solved path example.
  const NodeMatrix u(3, 2, {0.5, -0.5, 0, 0, -0.5, 0.5});
  const double e = poisson_energy(g, u, labels, 2.0, 1.0);
  CHECK(e < 0.0);
  rng::Engine engine(3);
  for (int rep = 0; rep < 50; ++rep) {
    auto v = u;
    const auto noise = testing::random_matrix(3, 2, engine);
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t c = 0; c < 2; ++c) v(i, c) += 0.1 * noise(i, c);
    }
    CHECK(poisson_energy(g, v, labels, 2.0, 1.0) >= e - 1e-15);
  }
  CHECK_THROWS_AS(poisson_energy(g, u, labels, 1.0, 1.0), Error);
}

TEST_CASE("calculus identities on random graphs") {
  rng::Engine engine(4);
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t n = 2 + rng::uniform_index(engine, 99);
    const std::size_t k = 1 + rng::uniform_index(engine, 4);
    const auto g = testing::random_connected_graph(n, engine);
    const auto u = testing::random_matrix(n, k, engine);
    const auto v = random_field(g, k, engine);

    // Adjointness (grad u, V) = -(u, div V).
    CHECK(rel(edge_inner(gradient(g, u), v), -node_inner(u, divergence(g, v))) <= 1e-10);

    const auto lu = laplacian_apply(g, u);
    const auto minus_div_grad = -1.0 * divergence(g, gradient(g, u));
    CHECK(max_abs_diff(lu, minus_div_grad) <= 1e-12 * std::max(1.0, lu.max_abs()));

    const double quad = node_inner(lu, u);
    const double grad_sq = std::pow(edge_norm_p(gradient(g, u), 2.0), 2.0);
    CHECK(rel(quad, grad_sq) <= 1e-10);
    CHECK(quad >= -1e-12);

    for (std::size_t c = 0; c < k; ++c) {
      double total = 0.0;
      for (std::size_t i = 0; i < n; ++i) total += lu(i, c);
      CHECK(std::abs(total) <= 1e-10 * std::max(1.0, u.max_abs()));
    }

    const auto grad = gradient(g, u);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j : g.neighbors(i)) {
        CHECK(grad.at(i, j, 0) == -grad.at(j, i, 0));
      }
    }
  }
}
