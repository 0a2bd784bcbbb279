// The OpenMP kernels must reproduce the serial reference bit for bit, for
// any thread count.

#include <omp.h>

#include <vector>

#include "doctest.h"
#include "gssl/kernels.hpp"
#include "support.hpp"

using namespace gssl;

namespace {

const int thread_counts[] = {1, 2, 3, 8};

struct Instance {
  SparseGraph graph;
  NodeMatrix u;
  NodeMatrix source;
  std::vector<char> pinned;
};

Instance make_instance(std::size_t n, std::size_t k, std::uint64_t seed) {
  rng::Engine engine(seed);
  Instance inst;
  inst.graph = testing::random_connected_graph(n, engine, 4.0);
  inst.u = testing::random_matrix(n, k, engine);
  inst.source = testing::random_matrix(n, k, engine);
  inst.pinned.assign(n, 0);
  for (std::size_t i = 0; i < n; i += 7) inst.pinned[i] = 1;
  return inst;
}

}  // namespace

TEST_CASE("laplacian, poisson, e1 and jacobi kernels match the serial reference") {
  for (std::size_t n : {5u, 1000u, 5000u}) {
    const auto inst = make_instance(n, 3, n);
    NodeMatrix ref(n, 3);
    NodeMatrix out(n, 3);
    for (int threads : thread_counts) {
      omp_set_num_threads(threads);
      kernels::serial::laplacian_apply(inst.graph, inst.u, ref);
      kernels::laplacian_apply(inst.graph, inst.u, out);
      CHECK(ref == out);

      const double r_ref = kernels::serial::poisson_step(inst.graph, inst.source, inst.u, ref);
      const double r_out = kernels::poisson_step(inst.graph, inst.source, inst.u, out);
      CHECK(ref == out);
      CHECK(r_ref == r_out);

      kernels::serial::e1_step(inst.graph, inst.u, inst.source, 0.7, 0.01, ref);
      kernels::e1_step(inst.graph, inst.u, inst.source, 0.7, 0.01, out);
      CHECK(ref == out);

      const double c_ref = kernels::serial::jacobi_sweep(inst.graph, inst.u, inst.pinned, ref);
      const double c_out = kernels::jacobi_sweep(inst.graph, inst.u, inst.pinned, out);
      CHECK(ref == out);
      CHECK(c_ref == c_out);
    }
  }
  omp_set_num_threads(omp_get_num_procs());
}

TEST_CASE("walk step and reductions match the serial reference") {
  const std::size_t n = 4099;
  const auto inst = make_instance(n, 1, 3);
  std::vector<double> p(inst.u.values().begin(), inst.u.values().end());
  std::vector<double> ref(n);
  std::vector<double> out(n);
  for (int threads : thread_counts) {
    omp_set_num_threads(threads);
    kernels::serial::walk_step(inst.graph, p, ref);
    kernels::walk_step(inst.graph, p, out);
    CHECK(ref == out);
    CHECK(kernels::serial::dot(p, ref) == kernels::dot(p, ref));
    CHECK(kernels::serial::sum(p) == kernels::sum(p));
  }
  omp_set_num_threads(omp_get_num_procs());
}

TEST_CASE("kNN search matches the serial reference") {
  rng::Engine engine(5);
  std::vector<double> v(700 * 5);
  for (double& x : v) x = testing::uniform(engine, 0.0, 1.0);
  const FeatureMatrix x(700, 5, v);
  const auto ref = kernels::serial::knn_search(x, 10);
  for (int threads : thread_counts) {
    omp_set_num_threads(threads);
    const auto out = kernels::knn_search(x, 10);
    CHECK(ref.index == out.index);
    CHECK(ref.squared_distance == out.squared_distance);
  }
  omp_set_num_threads(omp_get_num_procs());
}

TEST_CASE("walk step preserves total mass") {
  const auto inst = make_instance(300, 1, 9);
  std::vector<double> p(300, 1.0 / 300.0);
  std::vector<double> next(300);
  kernels::walk_step(inst.graph, p, next);
  CHECK(kernels::sum(next) == doctest::Approx(1.0).epsilon(1e-14));
}
