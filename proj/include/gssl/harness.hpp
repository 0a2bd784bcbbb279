#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gssl/graph.hpp"
#include "gssl/labels.hpp"
#include "gssl/mbo.hpp"
#include "gssl/plaplace.hpp"
#include "gssl/poisson.hpp"

namespace gssl::harness {

enum class Algorithm { poisson, poisson_mbo, laplace, laplace_centered, geodesic_nn, plap };

const char* to_string(Algorithm algo) noexcept;
// Raises InvalidArgument on an unknown name.
Algorithm parse_algorithm(std::string_view name);

enum class PriorMode { uniform, empirical, given };

struct TrialConfig {
  std::vector<Algorithm> algorithms{Algorithm::poisson};
  std::vector<std::size_t> labels_per_class{1, 2, 3, 4, 5};
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  // Class prior used by poisson, poisson_mbo and plap.
  PriorMode prior = PriorMode::uniform;
  std::vector<double> prior_values;  // PriorMode::given
  // One label for classes 0, 2, 4, ... and labels_per_class for the others.
  bool unbalanced = false;
  PoissonOptions poisson;
  MboParams mbo;
  double plap_p = 2.0;

  // Raises InvalidArgument on an empty schedule, zero trials or zero counts.
  void validate() const;
};

// Labels per class for one label-rate cell.
std::vector<std::size_t> per_class_counts(std::size_t num_classes, std::size_t labels_per_class,
                                          bool unbalanced);

// counts[c] members of class c drawn uniformly without replacement, entries
// sorted by node. Deterministic in `seed`. Raises InsufficientClassMembers.
LabelSet draw_labels(std::span<const std::size_t> truth, std::size_t num_classes,
                     std::span<const std::size_t> counts, std::uint64_t seed);

// Fraction of nodes outside `exclude` with pred == truth; all nodes when
// every node is labeled.
double accuracy(std::span<const std::size_t> pred, std::span<const std::size_t> truth,
                const LabelSet& exclude);

// Predicted class of every node.
std::vector<std::size_t> classify(Algorithm algo, const SparseGraph& graph, const LabelSet& labels,
                                  const ClassPrior& prior, const TrialConfig& config,
                                  std::vector<std::string>* warnings = nullptr);

struct TrialRecord {
  std::string algo;
  std::size_t labels_per_class = 0;
  std::size_t trial = 0;
  double accuracy = 0.0;

  friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

struct SummaryRecord {
  std::string algo;
  std::size_t labels_per_class = 0;
  double mean = 0.0;
  // Population standard deviation (divisor = number of trials).
  double std = 0.0;

  friend bool operator==(const SummaryRecord&, const SummaryRecord&) = default;
};

struct TrialReport {
  std::vector<TrialRecord> trials;
  std::vector<SummaryRecord> summary;
  std::vector<std::string> warnings;
};

// Mean and population standard deviation per (algo, labels_per_class), in
// first-appearance order.
std::vector<SummaryRecord> summarize(std::span<const TrialRecord> trials);

// Runs every (label rate, trial, algorithm) cell. Trial t draws its labels
// with seed + t, so all algorithms see the same labeled sets. Trials run in
// parallel; the report does not depend on the thread count.
TrialReport run_experiment(const TrialConfig& config, const SparseGraph& graph,
                           std::span<const std::size_t> truth);

// CSV with header "algo,labels_per_class,trial,accuracy"; reals as %.17g.
void write_trials(std::ostream& out, std::span<const TrialRecord> trials);
std::vector<TrialRecord> read_trials(std::istream& in);
// CSV with header "algo,labels_per_class,mean,std".
void write_summary(std::ostream& out, std::span<const SummaryRecord> summary);
std::vector<SummaryRecord> read_summary(std::istream& in);

// Fixed-width table: one row per algorithm, one column per label rate,
// cells "mean (std)" in percent with one decimal.
std::string format_table(std::span<const SummaryRecord> summary);

}  // namespace gssl::harness
