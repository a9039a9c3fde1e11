#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "sorr/losses.hpp"

namespace sorr {

// Feature matrix plus single labels (binary / multi-class) or label sets
// (multi-label).  Labels are 0-based; a binary task has l = 2 with class 1
// the positive (+1) class.
struct Dataset {
  Eigen::MatrixXd features;          // n x d
  std::vector<int> labels;           // single-label tasks
  std::vector<LabelSet> label_sets;  // multi-label tasks
  int l = 0;
  std::string provenance;
  // Samples whose label was rewritten by noise injection.
  std::vector<std::uint8_t> corrupted;
  std::size_t flip_count = 0;

  std::size_t size() const { return static_cast<std::size_t>(features.rows()); }
  int dim() const { return static_cast<int>(features.cols()); }
  bool multilabel() const { return !label_sets.empty(); }
  bool binary() const { return !multilabel() && l == 2; }

  // +1 / -1 for binary tasks.
  double sign(std::size_t i) const { return labels[i] == 1 ? 1.0 : -1.0; }

  // Throws on inconsistent shapes, out-of-range labels, or an empty set.
  void validate() const;

  // Rows `idx` (in that order), provenance and corruption flags carried over.
  Dataset subset(const std::vector<std::size_t>& idx) const;
};

enum class DataFormat { csv, libsvm };

DataFormat data_format_from_string(const std::string& name);
std::string to_string(DataFormat format);

struct LoadOptions {
  // Label count; 0 infers it from the data.
  int num_labels = 0;
  // LIBSVM: pad features to this width; 0 uses the largest index seen.
  int num_features = 0;
};

// CSV: header row with a `label` (integer) or `labels` (semicolon-separated
// integers) column plus numeric feature columns.  LIBSVM: `label idx:val ...`
// (comma-separated labels for multi-label), densified.  Files ending in .gz
// are decompressed transparently.  Labels in {-1,+1} or {0,1} load as a
// binary task; other labels are read as 1-based class indices.
Dataset load_dataset(const std::filesystem::path& path, DataFormat format,
                     const LoadOptions& options = {});

// Parsers over in-memory text (used by load_dataset and tests).
Dataset parse_csv(const std::string& text, const LoadOptions& options = {});
Dataset parse_libsvm(const std::string& text, const LoadOptions& options = {});

// Reads a whole file, inflating gzip content when present.
// CSV text in the loader's conventions: binary labels as -1/+1, classes and
// label sets 1-based.
std::string to_csv(const Dataset& data);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace sorr
