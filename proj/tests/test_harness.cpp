#include <cmath>
#include <set>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "gssl/error.hpp"
#include "gssl/graph.hpp"
#include "gssl/harness.hpp"
#include "gssl/knn.hpp"
#include "gssl/synth.hpp"
#include "support.hpp"

using namespace gssl;
using namespace gssl::harness;

namespace {

std::string trials_csv(const TrialReport& report) {
  std::ostringstream out;
  write_trials(out, report.trials);
  return out.str();
}

}  // namespace

TEST_CASE("algorithm names round-trip") {
  for (Algorithm a : {Algorithm::poisson, Algorithm::poisson_mbo, Algorithm::laplace,
                      Algorithm::laplace_centered, Algorithm::geodesic_nn, Algorithm::plap}) {
    CHECK(parse_algorithm(to_string(a)) == a);
  }
  CHECK_THROWS_AS(parse_algorithm("svm"), Error);
}

TEST_CASE("per-class counts") {
  CHECK(per_class_counts(3, 4, false) == std::vector<std::size_t>{4, 4, 4});
  // Classes 0, 2, 4 (first, third, fifth) get a single label.
  CHECK(per_class_counts(5, 4, true) == std::vector<std::size_t>{1, 4, 1, 4, 1});
}

TEST_CASE("draw_labels takes the requested number from each class") {
  const std::vector<std::size_t> truth{0, 1, 2, 0, 1, 2, 2, 0};
  const std::vector<std::size_t> counts{2, 1, 3};
  const LabelSet labels = draw_labels(truth, 3, counts, 11);
  CHECK(labels.size() == 6);
  CHECK(labels.class_counts() == counts);
  std::size_t prev = 0;
  bool first = true;
  for (const auto& e : labels.entries()) {
    CHECK(truth[e.node] == e.cls);
    if (!first) CHECK(e.node > prev);
    prev = e.node;
    first = false;
  }
  CHECK(draw_labels(truth, 3, counts, 11) == labels);
}

TEST_CASE("drawing a whole class labels all of it") {
  const std::vector<std::size_t> truth{1, 0, 1, 0, 0};
  const std::vector<std::size_t> counts{3, 2};
  const LabelSet labels = draw_labels(truth, 2, counts, 5);
  CHECK(labels.size() == truth.size());
  for (std::size_t i = 0; i < truth.size(); ++i) CHECK(labels.contains(i));
}

TEST_CASE("draw_labels is uniform within each class") {
  // Three classes of two: every member should be picked half of the time.
  const std::vector<std::size_t> truth{0, 0, 1, 1, 2, 2};
  const std::vector<std::size_t> counts{1, 1, 1};
  std::vector<std::size_t> hits(truth.size(), 0);
  const std::size_t seeds = 10000;
  for (std::uint64_t s = 0; s < seeds; ++s) {
    const LabelSet labels = draw_labels(truth, 3, counts, s);
    REQUIRE(labels.size() == 3);
    std::set<std::size_t> classes;
    for (const auto& e : labels.entries()) {
      ++hits[e.node];
      classes.insert(e.cls);
    }
    CHECK(classes.size() == 3);
  }
  for (std::size_t h : hits) CHECK(std::abs(static_cast<double>(h) / seeds - 0.5) <= 0.02);
}

TEST_CASE("draw_labels errors") {
  const std::vector<std::size_t> truth{0, 0, 1};
  const std::vector<std::size_t> too_many{1, 2};
  CHECK_THROWS_WITH_AS(draw_labels(truth, 2, too_many, 0), doctest::Contains("class 1"), Error);
  try {
    draw_labels(truth, 2, too_many, 0);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InsufficientClassMembers);
  }
  const std::vector<std::size_t> short_counts{1};
  CHECK_THROWS_AS(draw_labels(truth, 2, short_counts, 0), Error);
}

TEST_CASE("accuracy counts unlabeled nodes only") {
  const std::vector<std::size_t> truth{0, 1, 1, 0, 1};
  CHECK(accuracy(truth, truth, LabelSet({{0, 0}}, 2)) == 1.0);
  // Nodes 0 and 1 labeled; of the three unlabeled nodes two are right.
  const std::vector<std::size_t> pred{1, 0, 1, 1, 1};
  CHECK(accuracy(pred, truth, LabelSet({{0, 0}, {1, 1}}, 2)) == doctest::Approx(2.0 / 3.0));
  const std::vector<std::size_t> shorter{0, 1};
  CHECK_THROWS_AS(accuracy(shorter, truth, LabelSet({}, 2)), Error);
}

TEST_CASE("constant predictions on balanced classes score at chance") {
  std::vector<std::size_t> truth;
  for (std::size_t i = 0; i < 1000; ++i) truth.push_back(i % 10);
  const std::vector<std::size_t> pred(truth.size(), 3);
  CHECK(accuracy(pred, truth, LabelSet({}, 10)) == doctest::Approx(0.1));
}

TEST_CASE("summaries use the population standard deviation") {
  rng::Engine engine(3);
  std::vector<TrialRecord> trials;
  std::vector<double> values;
  for (std::size_t t = 0; t < 37; ++t) {
    const double a = testing::uniform(engine, 0.0, 1.0);
    values.push_back(a);
    trials.push_back({"poisson", 2, t, a});
  }
  trials.push_back({"laplace", 2, 0, 0.25});
  const auto summary = summarize(trials);
  REQUIRE(summary.size() == 2);
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= values.size();
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  const double std = std::sqrt(var / values.size());
  CHECK(summary[0].algo == "poisson");
  CHECK(std::abs(summary[0].mean - mean) <= 1e-12);
  CHECK(std::abs(summary[0].std - std) <= 1e-12);
  CHECK(summary[1].mean == 0.25);
  CHECK(summary[1].std == 0.0);
}

TEST_CASE("CSV files round-trip") {
  rng::Engine engine(8);
  std::vector<TrialRecord> trials;
  for (std::size_t t = 0; t < 50; ++t) {
    trials.push_back({t % 2 ? "poisson_mbo" : "laplace", 1 + t % 3, t, testing::uniform(engine, 0, 1)});
  }
  std::stringstream tcsv;
  write_trials(tcsv, trials);
  CHECK(read_trials(tcsv) == trials);

  const auto summary = summarize(trials);
  std::stringstream scsv;
  write_summary(scsv, summary);
  CHECK(read_summary(scsv) == summary);
}

TEST_CASE("malformed CSV is rejected") {
  std::istringstream wrong_header("algo,rate,trial,accuracy\n");
  CHECK_THROWS_AS(read_trials(wrong_header), Error);
  std::istringstream bad_number("algo,labels_per_class,trial,accuracy\npoisson,1,0,x\n");
  CHECK_THROWS_AS(read_trials(bad_number), Error);
  std::istringstream short_row("algo,labels_per_class,mean,std\npoisson,1,0.5\n");
  CHECK_THROWS_AS(read_summary(short_row), Error);
}

TEST_CASE("table format") {
  const std::vector<SummaryRecord> summary{
      {"poisson", 1, 0.902, 0.040}, {"poisson", 2, 0.93, 0.021}, {"laplace", 1, 0.16, 0.1}};
  const std::string table = format_table(summary);
  CHECK(table.find("90.2 (4.0)") != std::string::npos);
  CHECK(table.find("93.0 (2.1)") != std::string::npos);
  CHECK(table.find("16.0 (10.0)") != std::string::npos);
  CHECK(table.find('-') != std::string::npos);
}

TEST_CASE("trial config validation") {
  CHECK_NOTHROW(TrialConfig{}.validate());
  CHECK_THROWS_AS((TrialConfig{.trials = 0}.validate()), Error);
  CHECK_THROWS_AS((TrialConfig{.algorithms = {}}.validate()), Error);
  CHECK_THROWS_AS((TrialConfig{.labels_per_class = {1, 0}}.validate()), Error);
  CHECK_THROWS_AS((TrialConfig{.plap_p = 1.0}.validate()), Error);
}

TEST_CASE("two cliques: poisson at one label per class is exact on every draw") {
  const auto data = synth::two_cliques(20);
  TrialConfig config;
  config.algorithms = {Algorithm::poisson};
  config.labels_per_class = {1};
  config.trials = 100;
  config.seed = 42;
  const auto report = run_experiment(config, data.graph, data.truth);
  REQUIRE(report.trials.size() == 100);
  REQUIRE(report.summary.size() == 1);
  CHECK(report.summary[0].mean == 1.0);
  CHECK(report.summary[0].std == 0.0);
}

TEST_CASE("fully labeled laplace run scores 1") {
  const auto data = synth::two_cliques(6);
  TrialConfig config;
  config.algorithms = {Algorithm::laplace};
  config.labels_per_class = {6};
  config.trials = 1;
  const auto report = run_experiment(config, data.graph, data.truth);
  CHECK(report.trials.at(0).accuracy == 1.0);
}

TEST_CASE("runs are deterministic and share draws across algorithms") {
  const auto features = synth::blobs(3, 40, 4.0, 3, 7);
  const SparseGraph graph = build_knn_graph(features.features, {.k = 8});
  TrialConfig config;
  config.algorithms = {Algorithm::poisson, Algorithm::laplace, Algorithm::poisson_mbo,
                       Algorithm::geodesic_nn, Algorithm::laplace_centered};
  config.labels_per_class = {1, 3};
  config.trials = 6;
  config.seed = 1234;
  config.mbo.n_outer = 3;
  const auto first = run_experiment(config, graph, features.truth);
  const auto second = run_experiment(config, graph, features.truth);
  CHECK(trials_csv(first) == trials_csv(second));
  CHECK(first.trials.size() == 5 * 2 * 6);

  // A single-algorithm run sees the same labeled sets, so its accuracies match
  // the corresponding slice of the combined run exactly.
  TrialConfig solo = config;
  solo.algorithms = {Algorithm::laplace};
  const auto only = run_experiment(solo, graph, features.truth);
  std::vector<TrialRecord> slice;
  for (const auto& t : first.trials) {
    if (t.algo == "laplace") slice.push_back(t);
  }
  CHECK(slice == only.trials);
}

TEST_CASE("experiment preconditions") {
  const auto data = synth::two_cliques(4);
  TrialConfig config;
  config.labels_per_class = {5};
  CHECK_THROWS_AS(run_experiment(config, data.graph, data.truth), Error);
  config.labels_per_class = {1};
  const std::vector<std::size_t> short_truth{0, 1};
  CHECK_THROWS_AS(run_experiment(config, data.graph, short_truth), Error);
  config.prior = PriorMode::given;
  config.prior_values = {1.0};
  CHECK_THROWS_AS(run_experiment(config, data.graph, data.truth), Error);
}

TEST_CASE("synthetic generators") {
  const FeatureMatrix square = synth::uniform_square(500, 9);
  REQUIRE(square.rows() == 500);
  REQUIRE(square.dim() == 2);
  for (std::size_t i = 0; i < square.rows(); ++i) {
    for (double v : square.row(i)) CHECK((v >= 0.0 && v <= 1.0));
  }
  const FeatureMatrix again = synth::uniform_square(500, 9);
  CHECK(std::equal(square.values().begin(), square.values().end(), again.values().begin()));

  const auto cliques = synth::two_cliques(7);
  CHECK(cliques.graph.size() == 14);
  CHECK(is_connected(cliques.graph));
  CHECK(cliques.truth[6] == 0);
  CHECK(cliques.truth[7] == 1);

  CHECK_THROWS_AS(synth::blobs(4, 10, 5.0, 3, 0), Error);
}

TEST_CASE("blobs at ten standard deviations: geodesic nearest label is exact") {
  const auto data = synth::blobs(4, 60, 10.0, 4, 21);
  const SparseGraph graph = build_knn_graph(data.features, {.k = 10});
  // Brute force: each point's K nearest neighbors all lie in its own blob, so
  // no graph path leaves a blob and the nearest label is always in-blob.
  for (std::size_t i = 0; i < graph.size(); ++i) {
    for (std::size_t j : graph.neighbors(i)) CHECK(data.truth[j] == data.truth[i]);
  }
  TrialConfig config;
  config.algorithms = {Algorithm::geodesic_nn};
  config.labels_per_class = {1};
  config.trials = 10;
  const auto report = run_experiment(config, graph, data.truth);
  CHECK(report.summary.at(0).mean == 1.0);
}
