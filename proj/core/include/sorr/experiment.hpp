#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "sorr/data_ops.hpp"
#include "sorr/dataset.hpp"
#include "sorr/kv_config.hpp"
#include "sorr/losses.hpp"
#include "sorr/optim.hpp"

namespace sorr {

enum class Task { binary, multiclass, multilabel };
enum class Aggregate { average, max, median, atk, aorr, topk, tkml, tkml_aorr, auto_aorr };

std::string to_string(Task task);
std::string to_string(Aggregate aggregate);
Task task_from_string(const std::string& name);
Aggregate aggregate_from_string(const std::string& name);

// A rank given either as an absolute count or as a multiple of the training
// size ("n", "0.5n").
struct RankSpec {
  double value = 1.0;
  bool relative = false;

  std::size_t resolve(std::size_t n) const;
  std::string to_string() const;
  static RankSpec parse(const std::string& text);
};

// Every field has a default; `from_doc` reads the keys named after the fields.
struct ExperimentConfig {
  std::string name = "experiment";
  Task task = Task::binary;
  LossKind loss = LossKind::logistic;
  Aggregate aggregate = Aggregate::aorr;

  // Data source: a file, or the 2-D synthetic generator.
  std::string dataset;
  DataFormat format = DataFormat::csv;
  std::string test_dataset;  // optional fixed test file (split then has 2 parts)
  int num_labels = 0;
  int num_features = 0;            // LIBSVM width (0 = highest index seen)
  std::size_t subsample = 0;       // cap on the pool drawn from `dataset`
  std::size_t test_subsample = 0;  // cap on `test_dataset`
  std::string synthetic = "none";  // none | balanced | imbalanced
  int n_outliers = 0;

  // Label noise, applied to the training part only.
  std::string noise = "none";  // none | symmetric | asymmetric_map | multilabel_symmetric
  double noise_p = 0.0;
  std::string flip_map;  // 1-based "2:7,3:8,5:6,6:5,7:1"

  std::vector<double> split{0.5, 0.25, 0.25};
  bool standardize = true;

  RankSpec k{1.0, true};
  RankSpec m{0.0, false};
  int kprime = 1;
  TrainConfig train;  // r/kprime filled per run
  int repeats = 1;
  std::vector<int> eval_k{1};
  std::string output = "report";

  static ExperimentConfig from_doc(const KeyValueDoc& doc);
  static ExperimentConfig load(const std::filesystem::path& path);
  // Fully resolved key/value form (defaults expanded).
  KeyValueDoc to_doc() const;
  void validate() const;
};

struct RunRecord {
  int run = 0;
  std::uint64_t seed = 0;
  std::size_t n_train = 0;
  std::size_t k = 0;
  std::size_t m = 0;
  std::map<std::string, double> metrics;
  TrainReport report;
};

struct MetricSummary {
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation (0 for a single run)
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<RunRecord> runs;
  std::map<std::string, MetricSummary> summary;
  long long wall_ms = 0;
};

// The three datasets of one repeat, after split, standardization, noise and
// (for the top-k multi-label loss on multi-class data) singleton conversion.
struct RunData {
  Dataset train;
  Dataset validation;
  Dataset test;
  std::uint64_t seed = 0;
};
RunData prepare_run_data(const ExperimentConfig& config, int run);

// Seeded repeats of split -> standardize -> noise -> train -> evaluate.  Run r
// uses seed + r for the split, the noise and the trainer.
ExperimentResult run_experiment(const ExperimentConfig& config);

// Single training run on explicit datasets (used by run_experiment and the
// reproduction drivers).
RunRecord run_once(const ExperimentConfig& config, const Dataset& train,
                   const Dataset& validation, const Dataset& test,
                   std::uint64_t seed);

// JSON report: resolved config, per-run records and aggregates; wall-clock
// timings live in a separate "timing" section.
std::string report_json(const ExperimentResult& result);
// The deterministic part of the report (no timings).
std::string metrics_json(const ExperimentResult& result);
// One CSV row per run plus mean/std rows.
std::string report_csv(const ExperimentResult& result);

// Writes <base>.json and <base>.csv.
void write_report(const ExperimentResult& result, const std::filesystem::path& base);

// Loads a dataset once per process (keyed by path, format and label count).
const Dataset& cached_dataset(const std::filesystem::path& path, DataFormat format,
                              int num_labels, int num_features = 0);

std::map<int, int> parse_flip_map(const std::string& text);

// Converts single labels into singleton label sets.
Dataset as_singleton_sets(const Dataset& data);

}  // namespace sorr
