#include <cmath>
#include <vector>

#include "doctest.h"
#include "gssl/calculus.hpp"
#include "gssl/error.hpp"
#include "gssl/mbo.hpp"
#include "gssl/synth.hpp"
#include "support.hpp"

using namespace gssl;

namespace {

std::vector<double> uniform_mean(const NodeMatrix& u) {
  return weighted_mean(u, std::vector<double>(u.rows(), 1.0));
}

void check_one_hot(const NodeMatrix& u) {
  for (std::size_t i = 0; i < u.rows(); ++i) {
    std::size_t ones = 0;
    for (double v : u.row(i)) {
      CHECK((v == 0.0 || v == 1.0));
      ones += v == 1.0 ? 1 : 0;
    }
    CHECK(ones == 1);
  }
}

NodeMatrix one_hot(const std::vector<std::size_t>& classes, std::size_t k) {
  NodeMatrix u(classes.size(), k);
  for (std::size_t i = 0; i < classes.size(); ++i) u(i, classes[i]) = 1.0;
  return u;
}

// Single-flip local optimality: every one-node change of class raises the cut.
bool strict_local_minimum(const SparseGraph& g, const std::vector<std::size_t>& classes,
                          std::size_t k) {
  const double base = cut_energy(g, one_hot(classes, k));
  for (std::size_t i = 0; i < classes.size(); ++i) {
    for (std::size_t c = 0; c < k; ++c) {
      if (c == classes[i]) continue;
      auto flipped = classes;
      flipped[i] = c;
      if (!(cut_energy(g, one_hot(flipped, k)) > base)) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("parameter validation") {
  CHECK_NOTHROW(MboParams{}.validate());
  CHECK_THROWS_AS((MboParams{.mu = 0.0}.validate()), Error);
  CHECK_THROWS_AS((MboParams{.n_inner = 0}.validate()), Error);
  CHECK_THROWS_AS((MboParams{.s_min = 1.5}.validate()), Error);
  CHECK_THROWS_AS((MboParams{.s_max = 0.9}.validate()), Error);
  CHECK_THROWS_AS((MboParams{.dt = -1.0}.validate()), Error);
}

TEST_CASE("e1 descent step") {
  const auto g = testing::path_graph(3);
  const NodeMatrix u(3, 1, {0, 1, 3});
  const auto next = e1_descent_step(g, u, NodeMatrix(3, 1), 1.0, 0.5);
  CHECK(next == NodeMatrix(3, 1, {0.5, 1.5, 2.0}));

  // Fixed point: u solving L u = mu * source.
  const LabelSet labels({{0, 0}, {2, 1}}, 2);
  const NodeMatrix solved(3, 2, {0.5, -0.5, 0, 0, -0.5, 0.5});
  CHECK(max_abs_diff(e1_descent_step(g, solved, source_matrix(labels, 3), 1.0, 0.3), solved) <=
        1e-15);
  CHECK_THROWS_AS(e1_descent_step(g, NodeMatrix(2, 1), NodeMatrix(2, 1), 1.0, 0.1), Error);
}

TEST_CASE("e1 sweeps preserve the uniform mean") {
  rng::Engine engine(1);
  for (int rep = 0; rep < 20; ++rep) {
    const std::size_t n = 20 + rng::uniform_index(engine, 200);
    const auto g = testing::random_connected_graph(n, engine);
    const auto labels = testing::random_labels(n, 3, 6, engine);
    const auto source = source_matrix(labels, n);
    auto u = testing::random_matrix(n, 3, engine);
    const auto before = uniform_mean(u);
    for (int step = 0; step < 40; ++step) u = e1_descent_step(g, u, source, 1.0, 1.0 / g.max_degree());
    const auto after = uniform_mean(u);
    for (std::size_t c = 0; c < 3; ++c) CHECK(std::abs(after[c] - before[c]) <= 1e-10);
  }
}

TEST_CASE("simplex vertex projection") {
  CHECK(simplex_vertex_projection(std::vector<double>{0.9, 0.1}) == std::vector<double>{1, 0});
  CHECK(simplex_vertex_projection(std::vector<double>{0.5, 0.5}) == std::vector<double>{1, 0});
  CHECK(simplex_vertex_projection(std::vector<double>{-1, -2}) == std::vector<double>{1, 0});
  // Brute force over the vertices.
  rng::Engine engine(2);
  for (int rep = 0; rep < 200; ++rep) {
    const auto v = testing::random_matrix(1, 4, engine, -3.0, 3.0);
    std::size_t best = 0;
    double best_d = 1e300;
    for (std::size_t j = 0; j < 4; ++j) {
      double d = 0.0;
      for (std::size_t c = 0; c < 4; ++c) d += std::pow(v(0, c) - (c == j ? 1.0 : 0.0), 2);
      if (d < best_d) {
        best_d = d;
        best = j;
      }
    }
    CHECK(simplex_vertex_index(v.row(0)) == best);
  }
}

TEST_CASE("volume projection") {
  const MboParams params;
  SUBCASE("constraint already met") {
    const NodeMatrix u(2, 2, {0.9, 0.1, 0.2, 0.8});
    std::vector<std::vector<double>> trace;
    const auto out = volume_projection(u, ClassPrior::uniform(2), params,
                                       [&](std::span<const double> s) {
                                         trace.emplace_back(s.begin(), s.end());
                                       });
    CHECK(out == NodeMatrix(2, 2, {1, 0, 0, 1}));
    CHECK(trace.size() == params.s_iters);
    for (const auto& s : trace) CHECK(s == std::vector<double>{1.0, 1.0});
  }
  SUBCASE("infeasible prior drives s to the clip bounds") {
    const NodeMatrix u(4, 2, {0.9, 0.1, 0.6, 0.4, 0.8, 0.19, 0.8, 0.21});
    std::vector<double> last;
    const auto out = volume_projection(u, ClassPrior({0.0, 1.0}), params,
                                       [&](std::span<const double> s) {
                                         last.assign(s.begin(), s.end());
                                         for (double x : s) {
                                           CHECK(x >= params.s_min);
                                           CHECK(x <= params.s_max);
                                         }
                                       });
    CHECK(last == std::vector<double>{0.5, 2.0});
    // Flip exactly when u1 / u0 > 1/4.
    CHECK(label_decision(out) == std::vector<std::size_t>{0, 1, 0, 1});
  }
  SUBCASE("positive scaling of u changes nothing") {
    rng::Engine engine(3);
    const auto u = testing::random_matrix(200, 3, engine, 0.0, 1.0);
    const ClassPrior prior({0.5, 0.3, 0.2});
    const auto a = volume_projection(u, prior, params);
    CHECK(a == volume_projection(4.0 * u, prior, params));
    check_one_hot(a);
  }
}

TEST_CASE("two cliques are recovered from one label each") {
  const auto data = synth::two_cliques(10);
  CHECK(strict_local_minimum(data.graph, data.truth, 2));
  const LabelSet labels({{2, 0}, {15, 1}}, 2);
  const auto result = poisson_mbo(data.graph, labels, ClassPrior::uniform(2));
  check_one_hot(result.u);
  CHECK(result.classes == data.truth);
}

TEST_CASE("fully labeled input is reproduced when labels follow the clusters") {
  // Three dense clusters joined by weak random edges, every node labeled
  // with its cluster. Arbitrary labelings are not fixed points: the sweeps
  // start from the Poisson solution and diffusion overrides isolated labels.
  rng::Engine engine(4);
  for (int rep = 0; rep < 10; ++rep) {
    const std::size_t n = 9 + rng::uniform_index(engine, 12);
    std::vector<std::size_t> truth(n);
    for (std::size_t i = 0; i < n; ++i) truth[i] = i % 3;
    std::vector<WeightedEdge> edges;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (truth[i] == truth[j]) {
          edges.push_back({i, j, testing::uniform(engine, 0.5, 1.5)});
        } else if (rng::uniform01(engine) < 0.2) {
          edges.push_back({i, j, testing::uniform(engine, 0.001, 0.05)});
        }
      }
    }
    for (std::size_t c = 0; c + 1 < 3; ++c) edges.push_back({c, c + 1, 0.01});
    const auto g = SparseGraph::from_edges(n, edges);
    REQUIRE(is_connected(g));
    std::vector<LabeledNode> all;
    for (std::size_t i = 0; i < n; ++i) all.push_back({i, truth[i]});
    const auto result = poisson_mbo(g, LabelSet(all, 3), ClassPrior::empirical(truth, 3));
    CHECK(result.classes == truth);
  }
  const auto data = synth::two_cliques(10);
  std::vector<LabeledNode> all;
  for (std::size_t i = 0; i < 20; ++i) all.push_back({i, data.truth[i]});
  const auto result = poisson_mbo(data.graph, LabelSet(all, 2), ClassPrior::empirical(data.truth, 2));
  CHECK(result.classes == data.truth);
}

TEST_CASE("one round from a volume-feasible labeling does not raise the cut") {
  const auto data = synth::two_cliques(10);
  const LabelSet labels({{2, 0}, {15, 1}}, 2);
  const auto start = one_hot(data.truth, 2);
  const MboParams params;
  const auto after = mbo_round(data.graph, start, source_matrix(labels, 20),
                               ClassPrior::empirical(data.truth, 2), params,
                               1.0 / data.graph.max_degree());
  CHECK(cut_energy(data.graph, after) <= cut_energy(data.graph, start));
}

TEST_CASE("permuting classes permutes the output") {
  rng::Engine engine(5);
  for (int rep = 0; rep < 5; ++rep) {
    const auto g = testing::random_connected_graph(150, engine, 4.0);
    const auto labels = testing::random_labels(150, 3, 9, engine);
    const std::vector<std::size_t> perm{2, 0, 1};
    std::vector<LabeledNode> mapped;
    for (const auto& e : labels.entries()) mapped.push_back({e.node, perm[e.cls]});
    const ClassPrior prior({0.5, 0.3, 0.2});
    const ClassPrior mapped_prior({0.3, 0.2, 0.5});  // b'[perm[j]] = b[j]
    const auto a = poisson_mbo(g, labels, prior);
    const auto b = poisson_mbo(g, LabelSet(mapped, 3), mapped_prior);
    for (std::size_t i = 0; i < 150; ++i) CHECK(b.classes[i] == perm[a.classes[i]]);
  }
}

TEST_CASE("observers see preserved means inside each round and clipped weights") {
  rng::Engine engine(6);
  const auto g = testing::random_connected_graph(120, engine);
  const auto labels = testing::random_labels(120, 3, 6, engine);
  std::vector<double> round_start;
  std::size_t current_round = 999;
  MboObservers obs;
  NodeMatrix prev;
  obs.inner = [&](std::size_t outer, std::size_t inner, const NodeMatrix& u) {
    const auto mean = uniform_mean(u);
    if (inner == 0) {
      current_round = outer;
      round_start = mean;
    }
    CHECK(current_round == outer);
    for (std::size_t c = 0; c < 3; ++c) CHECK(std::abs(mean[c] - round_start[c]) <= 1e-10);
  };
  const MboParams params;
  obs.s = [&](std::span<const double> s) {
    for (double x : s) {
      CHECK(x >= params.s_min);
      CHECK(x <= params.s_max);
    }
  };
  const auto result = poisson_mbo(g, labels, ClassPrior::uniform(3), params, {}, obs);
  check_one_hot(result.u);
}
