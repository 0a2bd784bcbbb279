#include "gssl/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "gssl/error.hpp"
#include "gssl/laplace.hpp"
#include "gssl/rng.hpp"

namespace gssl::harness {

namespace {

constexpr std::pair<Algorithm, const char*> algorithm_names[] = {
    {Algorithm::poisson, "poisson"},
    {Algorithm::poisson_mbo, "poisson_mbo"},
    {Algorithm::laplace, "laplace"},
    {Algorithm::laplace_centered, "laplace_centered"},
    {Algorithm::geodesic_nn, "geodesic_nn"},
    {Algorithm::plap, "plap"},
};

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::size_t parse_count(const std::string& s, std::size_t line) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != s.size()) {
    fail(ErrorCode::Format, "line " + std::to_string(line) + ": bad integer '" + s + "'");
  }
  return static_cast<std::size_t>(v);
}

double parse_real(const std::string& s, std::size_t line) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != s.size()) {
    fail(ErrorCode::Format, "line " + std::to_string(line) + ": bad number '" + s + "'");
  }
  return v;
}

template <typename Row>
std::vector<Row> read_records(std::istream& in, const char* header,
                              Row (*parse)(const std::vector<std::string>&, std::size_t)) {
  std::string line;
  if (!std::getline(in, line) || line != header) {
    fail(ErrorCode::Format, std::string("expected header '") + header + "'");
  }
  std::vector<Row> rows;
  std::size_t number = 1;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    const auto fields = split_csv(line);
    if (fields.size() != 4) {
      fail(ErrorCode::Format, "line " + std::to_string(number) + ": expected 4 fields");
    }
    rows.push_back(parse(fields, number));
  }
  return rows;
}

ClassPrior prior_for(const TrialConfig& config, std::span<const std::size_t> truth, std::size_t k) {
  switch (config.prior) {
    case PriorMode::uniform: return ClassPrior::uniform(k);
    case PriorMode::empirical: return ClassPrior::empirical(truth, k);
    case PriorMode::given:
      if (config.prior_values.size() != k) {
        fail(ErrorCode::DimensionMismatch, "prior file has " +
                                               std::to_string(config.prior_values.size()) +
                                               " entries for " + std::to_string(k) + " classes");
      }
      return ClassPrior(config.prior_values);
  }
  return ClassPrior::uniform(k);
}

}  // namespace

const char* to_string(Algorithm algo) noexcept {
  for (const auto& [a, name] : algorithm_names) {
    if (a == algo) return name;
  }
  return "unknown";
}

Algorithm parse_algorithm(std::string_view name) {
  for (const auto& [a, n] : algorithm_names) {
    if (name == n) return a;
  }
  fail(ErrorCode::InvalidArgument, "unknown algorithm '" + std::string(name) + "'");
}

void TrialConfig::validate() const {
  if (algorithms.empty()) fail(ErrorCode::InvalidArgument, "no algorithm selected");
  if (labels_per_class.empty()) fail(ErrorCode::InvalidArgument, "empty labels-per-class schedule");
  if (trials == 0) fail(ErrorCode::InvalidArgument, "trial count must be at least 1");
  for (std::size_t m : labels_per_class) {
    if (m == 0) fail(ErrorCode::InvalidArgument, "labels per class must be at least 1");
  }
  mbo.validate();
  if (!(plap_p > 1.0)) fail(ErrorCode::InvalidP, "p must be > 1");
}

std::vector<std::size_t> per_class_counts(std::size_t num_classes, std::size_t labels_per_class,
                                          bool unbalanced) {
  std::vector<std::size_t> counts(num_classes, labels_per_class);
  if (unbalanced) {
    for (std::size_t c = 0; c < num_classes; c += 2) counts[c] = 1;
  }
  return counts;
}

LabelSet draw_labels(std::span<const std::size_t> truth, std::size_t num_classes,
                     std::span<const std::size_t> counts, std::uint64_t seed) {
  if (counts.size() != num_classes) {
    fail(ErrorCode::DimensionMismatch, "one count per class is required");
  }
  std::vector<std::vector<std::size_t>> members(num_classes);
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (truth[i] >= num_classes) fail(ErrorCode::IndexOutOfRange, "truth class id >= k");
    members[truth[i]].push_back(i);
  }
  rng::Engine engine(seed);
  std::vector<LabeledNode> entries;
  for (std::size_t c = 0; c < num_classes; ++c) {
    auto& pool = members[c];
    if (counts[c] > pool.size()) {
      fail(ErrorCode::InsufficientClassMembers,
           "class " + std::to_string(c) + " has " + std::to_string(pool.size()) +
               " members, " + std::to_string(counts[c]) + " labels requested");
    }
    // Partial Fisher-Yates: the first counts[c] slots end up a uniform sample.
    for (std::size_t r = 0; r < counts[c]; ++r) {
      const std::size_t pick = r + rng::uniform_index(engine, pool.size() - r);
      std::swap(pool[r], pool[pick]);
      entries.push_back({pool[r], c});
    }
  }
  std::sort(entries.begin(), entries.end(),
            [](const LabeledNode& a, const LabeledNode& b) { return a.node < b.node; });
  return LabelSet(std::move(entries), num_classes);
}

double accuracy(std::span<const std::size_t> pred, std::span<const std::size_t> truth,
                const LabelSet& exclude) {
  if (pred.size() != truth.size()) fail(ErrorCode::DimensionMismatch, "pred and truth differ in length");
  exclude.check_nodes(truth.size());
  const bool all = exclude.size() >= truth.size();
  std::size_t correct = 0;
  std::size_t total = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (!all && exclude.contains(i)) continue;
    ++total;
    if (pred[i] == truth[i]) ++correct;
  }
  if (total == 0) return 1.0;
  return static_cast<double>(correct) / static_cast<double>(total);
}

std::vector<std::size_t> classify(Algorithm algo, const SparseGraph& graph, const LabelSet& labels,
                                  const ClassPrior& prior, const TrialConfig& config,
                                  std::vector<std::string>* warnings) {
  auto note = [&](const std::vector<std::string>& w) {
    if (warnings) warnings->insert(warnings->end(), w.begin(), w.end());
  };
  switch (algo) {
    case Algorithm::poisson: {
      auto result = poisson_learning(graph, labels, prior, config.poisson);
      note(result.report.warnings);
      return label_decision(result.u);
    }
    case Algorithm::poisson_mbo: {
      auto result = poisson_mbo(graph, labels, prior, config.mbo, config.poisson);
      note(result.poisson_report.warnings);
      return std::move(result.classes);
    }
    case Algorithm::laplace:
      return label_decision(laplace_solve(graph, labels).u);
    case Algorithm::laplace_centered: {
      const auto u = laplace_solve(graph, labels).u;
      const auto shift = ybar_w(labels, graph.degrees());
      return centered_decision(u, shift);
    }
    case Algorithm::geodesic_nn:
      return geodesic_nn(graph, labels);
    case Algorithm::plap: {
      PlapParams params;
      params.p = config.plap_p;
      auto result = plap_solve(graph, labels, params);
      note(result.report.warnings);
      return label_decision(apply_class_prior(result.u, labels.mean(), prior));
    }
  }
  return {};
}

std::vector<SummaryRecord> summarize(std::span<const TrialRecord> trials) {
  std::vector<SummaryRecord> out;
  std::vector<std::vector<double>> values;
  std::map<std::pair<std::string, std::size_t>, std::size_t> index;
  for (const auto& t : trials) {
    const auto key = std::make_pair(t.algo, t.labels_per_class);
    auto it = index.find(key);
    if (it == index.end()) {
      it = index.emplace(key, out.size()).first;
      out.push_back({t.algo, t.labels_per_class, 0.0, 0.0});
      values.emplace_back();
    }
    values[it->second].push_back(t.accuracy);
  }
  for (std::size_t r = 0; r < out.size(); ++r) {
    const auto& v = values[r];
    double mean = 0.0;
    for (double a : v) mean += a;
    mean /= static_cast<double>(v.size());
    double var = 0.0;
    for (double a : v) var += (a - mean) * (a - mean);
    var /= static_cast<double>(v.size());
    out[r].mean = mean;
    out[r].std = std::sqrt(var);
  }
  return out;
}

TrialReport run_experiment(const TrialConfig& config, const SparseGraph& graph,
                           std::span<const std::size_t> truth) {
  config.validate();
  if (truth.size() != graph.size()) {
    fail(ErrorCode::DimensionMismatch, "truth has " + std::to_string(truth.size()) +
                                           " entries for " + std::to_string(graph.size()) +
                                           " nodes");
  }
  if (truth.empty()) fail(ErrorCode::EmptyInput, "empty graph");
  const std::size_t k = *std::max_element(truth.begin(), truth.end()) + 1;
  const ClassPrior prior = prior_for(config, truth, k);
  const std::size_t rates = config.labels_per_class.size();
  const std::size_t algos = config.algorithms.size();
  const std::size_t trials = config.trials;

  // Draw every labeled set up front so a bad schedule fails before any work.
  std::vector<LabelSet> draws(rates * trials);
  for (std::size_t r = 0; r < rates; ++r) {
    const auto counts = per_class_counts(k, config.labels_per_class[r], config.unbalanced);
    for (std::size_t t = 0; t < trials; ++t) {
      draws[r * trials + t] = draw_labels(truth, k, counts, config.seed + t);
    }
  }

  const std::size_t cells = rates * trials;
  std::vector<double> acc(cells * algos, 0.0);
  std::vector<std::vector<std::string>> warnings(cells * algos);
  std::vector<std::exception_ptr> errors(cells);
  const auto cells_signed = static_cast<std::ptrdiff_t>(cells);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t cell = 0; cell < cells_signed; ++cell) {
    const auto c = static_cast<std::size_t>(cell);
    try {
      for (std::size_t a = 0; a < algos; ++a) {
        const auto pred = classify(config.algorithms[a], graph, draws[c], prior, config,
                                   &warnings[c * algos + a]);
        acc[c * algos + a] = accuracy(pred, truth, draws[c]);
      }
    } catch (...) {
      errors[c] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  TrialReport report;
  for (std::size_t a = 0; a < algos; ++a) {
    for (std::size_t r = 0; r < rates; ++r) {
      for (std::size_t t = 0; t < trials; ++t) {
        const std::size_t slot = (r * trials + t) * algos + a;
        report.trials.push_back(
            {to_string(config.algorithms[a]), config.labels_per_class[r], t, acc[slot]});
        for (const auto& w : warnings[slot]) {
          report.warnings.push_back(std::string(to_string(config.algorithms[a])) + " trial " +
                                    std::to_string(t) + ": " + w);
        }
      }
    }
  }
  report.summary = summarize(report.trials);
  return report;
}

void write_trials(std::ostream& out, std::span<const TrialRecord> trials) {
  out << "algo,labels_per_class,trial,accuracy\n";
  for (const auto& t : trials) {
    out << t.algo << ',' << t.labels_per_class << ',' << t.trial << ',' << format_real(t.accuracy)
        << '\n';
  }
}

std::vector<TrialRecord> read_trials(std::istream& in) {
  return read_records<TrialRecord>(
      in, "algo,labels_per_class,trial,accuracy",
      [](const std::vector<std::string>& f, std::size_t line) {
        return TrialRecord{f[0], parse_count(f[1], line), parse_count(f[2], line),
                           parse_real(f[3], line)};
      });
}

void write_summary(std::ostream& out, std::span<const SummaryRecord> summary) {
  out << "algo,labels_per_class,mean,std\n";
  for (const auto& s : summary) {
    out << s.algo << ',' << s.labels_per_class << ',' << format_real(s.mean) << ','
        << format_real(s.std) << '\n';
  }
}

std::vector<SummaryRecord> read_summary(std::istream& in) {
  return read_records<SummaryRecord>(
      in, "algo,labels_per_class,mean,std",
      [](const std::vector<std::string>& f, std::size_t line) {
        return SummaryRecord{f[0], parse_count(f[1], line), parse_real(f[2], line),
                             parse_real(f[3], line)};
      });
}

std::string format_table(std::span<const SummaryRecord> summary) {
  std::vector<std::string> algos;
  std::vector<std::size_t> rates;
  for (const auto& s : summary) {
    if (std::find(algos.begin(), algos.end(), s.algo) == algos.end()) algos.push_back(s.algo);
    if (std::find(rates.begin(), rates.end(), s.labels_per_class) == rates.end()) {
      rates.push_back(s.labels_per_class);
    }
  }
  std::size_t name_width = 10;
  for (const auto& a : algos) name_width = std::max(name_width, a.size());

  std::ostringstream out;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%-*s", static_cast<int>(name_width), "# labels");
  out << buf;
  for (std::size_t r : rates) {
    std::snprintf(buf, sizeof buf, "  %12zu", r);
    out << buf;
  }
  out << '\n';
  for (const auto& a : algos) {
    std::snprintf(buf, sizeof buf, "%-*s", static_cast<int>(name_width), a.c_str());
    out << buf;
    for (std::size_t r : rates) {
      const auto it = std::find_if(summary.begin(), summary.end(), [&](const SummaryRecord& s) {
        return s.algo == a && s.labels_per_class == r;
      });
      if (it == summary.end()) {
        std::snprintf(buf, sizeof buf, "  %12s", "-");
      } else {
        char cell[32];
        std::snprintf(cell, sizeof cell, "%.1f (%.1f)", 100.0 * it->mean, 100.0 * it->std);
        std::snprintf(buf, sizeof buf, "  %12s", cell);
      }
      out << buf;
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace gssl::harness
