// gssl: graph construction, trial runs, single solves and synthetic data.

#include <omp.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gssl/error.hpp"
#include "gssl/harness.hpp"
#include "gssl/io.hpp"
#include "gssl/knn.hpp"
#include "gssl/synth.hpp"

namespace fs = std::filesystem;
using namespace gssl;

namespace {

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::Io, "cannot open " + path.string() + " for writing");
  return out;
}

std::ifstream open_in(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::Io, "cannot open " + path.string());
  return in;
}

void finish(std::ofstream& out, const fs::path& path) {
  out.flush();
  if (!out) fail(ErrorCode::Io, "write to " + path.string() + " failed");
}

FeatureMatrix load_features(const fs::path& path, const std::string& format) {
  if (format == "auto") return io::read_features(path);
  auto in = open_in(path);
  return format == "csv" ? io::read_features_csv(in) : io::read_features_binary(in);
}

void save_features(const fs::path& path, const FeatureMatrix& x, const std::string& format) {
  auto out = open_out(path);
  if (format == "bin") {
    io::write_features_binary(out, x);
  } else {
    io::write_features_csv(out, x);
  }
  finish(out, path);
}

void save_truth(const fs::path& path, const std::vector<std::size_t>& truth) {
  auto out = open_out(path);
  io::write_truth(out, truth);
  finish(out, path);
}

// One nonnegative real per line; blank lines ignored.
std::vector<double> read_prior_file(const fs::path& path) {
  auto in = open_in(path);
  std::vector<double> values;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream field(line);
    double v = 0.0;
    std::string rest;
    if (!(field >> v) || (field >> rest)) {
      fail(ErrorCode::Format, path.string() + ":" + std::to_string(number) + ": expected one number");
    }
    values.push_back(v);
  }
  return values;
}

// Repeated messages are common across trials; print each distinct one once.
void report_warnings(const std::vector<std::string>& warnings) {
  std::vector<std::string> seen;
  for (const auto& w : warnings) {
    const auto colon = w.find(": ");
    const std::string body = colon == std::string::npos ? w : w.substr(colon + 2);
    bool repeat = false;
    for (const auto& s : seen) repeat = repeat || s == body;
    if (repeat) continue;
    seen.push_back(body);
    std::cerr << "warning: " << w << '\n';
  }
  if (warnings.size() > seen.size()) {
    std::cerr << "warning: " << warnings.size() - seen.size()
              << " repeated warnings from other trials suppressed\n";
  }
}

// Solver flags shared by `run` and `solve`.
struct SolverFlags {
  std::string stop = "mixing";
  std::optional<double> epsilon;
  std::optional<std::size_t> max_iter;
  std::size_t fixed_t = 0;
  bool degree_weighted = false;
  double mu = 1.0;
  std::size_t n_inner = 40;
  std::size_t n_outer = 20;
  std::optional<double> dt;
  double dtau = 10.0;
  double s_min = 0.5;
  double s_max = 2.0;
  std::size_t s_iters = 100;
  double p = 2.0;
  std::string prior = "uniform";
  std::string prior_file;

  void attach(CLI::App& app, bool allow_empirical) {
    app.add_option("--stop", stop, "Poisson stopping rule")
        ->check(CLI::IsMember({"mixing", "fixed"}))
        ->capture_default_str();
    app.add_option("--epsilon", epsilon, "Mixing tolerance (default 1/n)");
    app.add_option("--max-iter", max_iter, "Cap on the mixing time (default 10 n)");
    app.add_option("--fixed-T", fixed_t, "Walk time T for --stop fixed")->capture_default_str();
    app.add_flag("--degree-weighted", degree_weighted, "Degree-weighted Poisson sources");
    app.add_option("--mu", mu, "PoissonMBO fidelity weight")->capture_default_str();
    app.add_option("--n-inner", n_inner, "PoissonMBO descent steps per round")->capture_default_str();
    app.add_option("--n-outer", n_outer, "PoissonMBO rounds")->capture_default_str();
    app.add_option("--dt", dt, "PoissonMBO step (default 1/max degree)");
    app.add_option("--dtau", dtau, "Volume projection step")->capture_default_str();
    app.add_option("--s-min", s_min, "Lower clip for the volume weights")->capture_default_str();
    app.add_option("--s-max", s_max, "Upper clip for the volume weights")->capture_default_str();
    app.add_option("--s-iters", s_iters, "Volume projection iterations")->capture_default_str();
    app.add_option("--p", p, "Exponent for --algo plap")->capture_default_str();
    std::vector<std::string> modes{"uniform"};
    if (allow_empirical) modes.push_back("empirical");
    auto* prior_opt = app.add_option("--prior", prior, "Class prior b")
                          ->check(CLI::IsMember(modes))
                          ->capture_default_str();
    app.add_option("--prior-file", prior_file, "Class prior b, one fraction per line")
        ->check(CLI::ExistingFile)
        ->excludes(prior_opt);
  }

  void apply(harness::TrialConfig& config) const {
    config.poisson.rule = stop == "fixed" ? StopRule::fixed_iterations : StopRule::mixing_time;
    config.poisson.epsilon = epsilon;
    config.poisson.max_iter = max_iter;
    config.poisson.fixed_iterations = fixed_t;
    config.poisson.degree_weighted_source = degree_weighted;
    config.mbo.mu = mu;
    config.mbo.n_inner = n_inner;
    config.mbo.n_outer = n_outer;
    config.mbo.dt = dt;
    config.mbo.dtau = dtau;
    config.mbo.s_min = s_min;
    config.mbo.s_max = s_max;
    config.mbo.s_iters = s_iters;
    config.plap_p = p;
    if (!prior_file.empty()) {
      config.prior = harness::PriorMode::given;
      config.prior_values = read_prior_file(prior_file);
    } else {
      config.prior =
          prior == "empirical" ? harness::PriorMode::empirical : harness::PriorMode::uniform;
    }
  }
};

struct GraphSource {
  std::string graph;
  std::string features;
  std::string format = "auto";
  std::size_t k = 10;
  bool keep_diagonal = false;

  void attach(CLI::App& app) {
    auto* g = app.add_option("--graph", graph, "Graph file")->check(CLI::ExistingFile);
    auto* f = app.add_option("--features", features, "Feature file; the kNN graph is built first")
                  ->check(CLI::ExistingFile);
    g->excludes(f);
    app.add_option("--format", format, "Feature file format")
        ->check(CLI::IsMember({"auto", "csv", "bin"}))
        ->capture_default_str();
    app.add_option("--k", k, "Neighbors per point when building from features")
        ->capture_default_str();
    app.add_flag("--keep-diagonal", keep_diagonal, "Keep the kernel's self weights");
  }

  SparseGraph load() const {
    if (!graph.empty()) return io::read_graph(fs::path(graph));
    if (features.empty()) fail(ErrorCode::InvalidArgument, "one of --graph or --features is required");
    return build_knn_graph(load_features(features, format), {.k = k, .zero_diagonal = !keep_diagonal});
  }
};

fs::path default_summary_path(const fs::path& out) {
  fs::path summary = out;
  summary.replace_filename(out.stem().string() + "_summary" + out.extension().string());
  return summary;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graph-based semi-supervised learning at very low label rates"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "OpenMP worker threads (0 keeps the runtime default)");

  // build-graph
  auto* build = app.add_subcommand("build-graph", "Build the Gaussian kNN graph of a feature file");
  std::string build_features;
  std::string build_format = "auto";
  std::string build_out;
  KnnOptions knn;
  bool build_keep_diagonal = false;
  build->add_option("--features", build_features, "Feature file")->required()->check(CLI::ExistingFile);
  build->add_option("--format", build_format, "Feature file format")
      ->check(CLI::IsMember({"auto", "csv", "bin"}))
      ->capture_default_str();
  build->add_option("--k", knn.k, "Neighbors per point")->capture_default_str();
  build->add_flag("--keep-diagonal", build_keep_diagonal, "Keep the kernel's self weights");
  build->add_flag("--degenerate-fallback", knn.degenerate_fallback,
                  "Tolerate duplicate points at the K-th neighbor distance");
  build->add_option("--out", build_out, "Output graph file")->required();

  // run
  auto* run = app.add_subcommand("run", "Randomized trials at several label rates");
  GraphSource run_graph;
  run_graph.attach(*run);
  std::string run_truth;
  std::vector<std::string> run_algos{"poisson"};
  harness::TrialConfig run_config;
  SolverFlags run_flags;
  std::string run_out;
  std::string run_summary;
  bool run_quiet = false;
  run->add_option("--truth", run_truth, "Ground-truth class file")->required()->check(CLI::ExistingFile);
  run->add_option("--algo", run_algos, "Algorithms, comma separated")
      ->delimiter(',')
      ->check(CLI::IsMember({"poisson", "poisson_mbo", "laplace", "laplace_centered", "geodesic_nn",
                             "plap"}))
      ->capture_default_str();
  run->add_option("--labels-per-class", run_config.labels_per_class, "Label rates, comma separated")
      ->delimiter(',')
      ->capture_default_str();
  run->add_option("--trials", run_config.trials, "Trials per label rate")->capture_default_str();
  run->add_option("--seed", run_config.seed, "Master seed; trial t uses seed + t")
      ->capture_default_str();
  run->add_flag("--unbalanced", run_config.unbalanced,
                "One label for classes 0, 2, 4, ... and the full rate for the rest");
  run_flags.attach(*run, true);
  run->add_option("--out", run_out, "Per-trial CSV")->required();
  run->add_option("--summary", run_summary, "Aggregate CSV (default <out>_summary.csv)");
  run->add_flag("--quiet", run_quiet, "Do not print the results table");

  // solve
  auto* solve = app.add_subcommand("solve", "Classify every node from one label file");
  GraphSource solve_graph;
  solve_graph.attach(*solve);
  std::string solve_labels;
  std::string solve_algo = "poisson";
  std::size_t solve_classes = 0;
  SolverFlags solve_flags;
  std::string solve_out;
  solve->add_option("--labels", solve_labels, "Label file (node,class lines)")
      ->required()
      ->check(CLI::ExistingFile);
  solve->add_option("--classes", solve_classes, "Number of classes (default max class + 1)");
  solve->add_option("--algo", solve_algo, "Algorithm")
      ->check(CLI::IsMember({"poisson", "poisson_mbo", "laplace", "laplace_centered", "geodesic_nn",
                             "plap"}))
      ->capture_default_str();
  solve_flags.attach(*solve, false);
  solve->add_option("--out", solve_out, "Predicted class per node, one per line")->required();

  // synth
  auto* synth = app.add_subcommand("synth", "Synthetic datasets");
  synth->require_subcommand(1);
  auto* square = synth->add_subcommand("square", "Uniform points in the unit square");
  std::size_t square_n = 10000;
  std::uint64_t square_seed = 0;
  std::string square_out;
  std::string square_format = "csv";
  square->add_option("--n", square_n, "Number of points")->capture_default_str();
  square->add_option("--seed", square_seed, "Seed")->capture_default_str();
  square->add_option("--out", square_out, "Feature file")->required();
  square->add_option("--format", square_format, "Feature file format")
      ->check(CLI::IsMember({"csv", "bin"}))
      ->capture_default_str();

  auto* blobs = synth->add_subcommand("blobs", "Gaussian blobs with equidistant centers");
  std::size_t blob_classes = 10;
  std::size_t blob_per_class = 500;
  double blob_separation = 10.0;
  std::size_t blob_dim = 10;
  std::uint64_t blob_seed = 0;
  std::string blob_out;
  std::string blob_truth;
  std::string blob_format = "csv";
  blobs->add_option("--classes", blob_classes, "Number of blobs")->capture_default_str();
  blobs->add_option("--per-class", blob_per_class, "Points per blob")->capture_default_str();
  blobs->add_option("--separation", blob_separation, "Distance between centers, in standard deviations")
      ->capture_default_str();
  blobs->add_option("--dim", blob_dim, "Ambient dimension (>= classes)")->capture_default_str();
  blobs->add_option("--seed", blob_seed, "Seed")->capture_default_str();
  blobs->add_option("--out", blob_out, "Feature file")->required();
  blobs->add_option("--truth-out", blob_truth, "Ground-truth class file")->required();
  blobs->add_option("--format", blob_format, "Feature file format")
      ->check(CLI::IsMember({"csv", "bin"}))
      ->capture_default_str();

  auto* cliques = synth->add_subcommand("cliques", "Two cliques joined by one weak edge");
  std::size_t clique_size = 10;
  std::string clique_out;
  std::string clique_truth;
  cliques->add_option("--size", clique_size, "Nodes per clique")->capture_default_str();
  cliques->add_option("--out", clique_out, "Graph file")->required();
  cliques->add_option("--truth-out", clique_truth, "Ground-truth class file")->required();

  CLI11_PARSE(app, argc, argv);
  if (threads > 0) omp_set_num_threads(threads);

  try {
    if (*build) {
      knn.zero_diagonal = !build_keep_diagonal;
      const SparseGraph graph = build_knn_graph(load_features(build_features, build_format), knn);
      io::write_graph(fs::path(build_out), graph);
    } else if (*run) {
      run_config.algorithms.clear();
      for (const auto& name : run_algos) run_config.algorithms.push_back(harness::parse_algorithm(name));
      run_flags.apply(run_config);
      const SparseGraph graph = run_graph.load();
      const auto truth = io::read_truth(fs::path(run_truth));
      const auto report = harness::run_experiment(run_config, graph, truth);
      report_warnings(report.warnings);

      const fs::path out_path(run_out);
      auto out = open_out(out_path);
      harness::write_trials(out, report.trials);
      finish(out, out_path);
      const fs::path summary_path = run_summary.empty() ? default_summary_path(out_path) : fs::path(run_summary);
      auto summary = open_out(summary_path);
      harness::write_summary(summary, report.summary);
      finish(summary, summary_path);
      if (!run_quiet) std::cout << harness::format_table(report.summary);
    } else if (*solve) {
      harness::TrialConfig config;
      solve_flags.apply(config);
      const SparseGraph graph = solve_graph.load();
      const LabelSet labels = io::read_labels(fs::path(solve_labels), solve_classes);
      const std::size_t k = labels.num_classes();
      const ClassPrior prior = config.prior == harness::PriorMode::given
                                   ? ClassPrior(config.prior_values)
                                   : ClassPrior::uniform(k);
      if (prior.size() != k) {
        fail(ErrorCode::DimensionMismatch, "prior has " + std::to_string(prior.size()) +
                                               " entries for " + std::to_string(k) + " classes");
      }
      std::vector<std::string> warnings;
      const auto classes = harness::classify(harness::parse_algorithm(solve_algo), graph, labels,
                                             prior, config, &warnings);
      report_warnings(warnings);
      save_truth(solve_out, classes);
    } else if (*square) {
      save_features(square_out, synth::uniform_square(square_n, square_seed), square_format);
    } else if (*blobs) {
      const auto data = synth::blobs(blob_classes, blob_per_class, blob_separation, blob_dim, blob_seed);
      save_features(blob_out, data.features, blob_format);
      save_truth(blob_truth, data.truth);
    } else if (*cliques) {
      const auto data = synth::two_cliques(clique_size);
      io::write_graph(fs::path(clique_out), data.graph);
      save_truth(clique_truth, data.truth);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
