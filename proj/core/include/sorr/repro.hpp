#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "sorr/experiment.hpp"

namespace sorr {

struct ReproOptions {
  std::filesystem::path data_dir = "data";
  std::filesystem::path out_dir = "repro";
  // Training points drawn from MNIST at desk scale (the validation part is
  // added on top); ignored with `full`.
  std::size_t subsample = 10000;
  bool full = false;
  int repeats = 0;  // 0 = the table's own default
  std::uint64_t seed = 0;
};

// One cell of a reproduced table: our mean/std next to the published value.
struct ReproRow {
  std::string group;   // dataset or noise level
  std::string method;  // aggregate / loss combination
  std::string metric;
  std::string param;   // swept parameter value, empty when not a sweep
  double mean = 0.0;
  double std = 0.0;
  int runs = 0;
  std::optional<double> reference;
};

struct ReproReport {
  std::string name;
  std::vector<ReproRow> rows;
  std::vector<std::string> notes;          // skipped inputs, substitutions
  std::vector<ExperimentConfig> configs;   // every resolved config that ran
};

const std::vector<std::string>& repro_registry();

// Throws UsageError for names outside the registry.
ReproReport run_repro(const std::string& name, const ReproOptions& options);

std::string repro_json(const ReproReport& report);
std::string repro_csv(const ReproReport& report);
// Writes <out_dir>/<name>.json and <out_dir>/<name>.csv.
void write_repro(const ReproReport& report, const std::filesystem::path& out_dir);

// Configurations shared by the reproduction drivers and the acceptance suite.

// Binary benchmark (monk2, australian, phoneme, titanic, splice) with the
// published per-dataset k, m and epoch counts; 50/25/25 splits, 10 repeats.
ExperimentConfig benchmark_config(const std::filesystem::path& data_dir,
                                  const std::string& dataset, LossKind loss,
                                  Aggregate aggregate);

// 2-D synthetic set with `outliers` planted points; AT_k and AoRR use
// k = outliers + 1 and m = outliers.
ExperimentConfig synthetic_config(bool balanced, int outliers, LossKind loss,
                                  Aggregate aggregate);

// MNIST softmax with symmetric noise; 10k train + 2k clean validation drawn
// from the bundled training file, the bundled test file for evaluation.
ExperimentConfig mnist_noise_config(const std::filesystem::path& data_dir, double p,
                                    Aggregate aggregate, std::size_t train_points);

// Multi-label benchmark (emotions, scene, yeast) with the top-k multi-label
// loss or the multi-label logistic baseline.
ExperimentConfig multilabel_config(const std::filesystem::path& data_dir,
                                   const std::string& dataset, LossKind loss);

// Yeast with symmetric multi-label noise p and the combined top-k
// multi-label / ranked-range objective.  `aggregate` is average, atk or aorr.
ExperimentConfig yeast_combined_config(const std::filesystem::path& data_dir, double p,
                                       int kprime, Aggregate aggregate);

}  // namespace sorr
