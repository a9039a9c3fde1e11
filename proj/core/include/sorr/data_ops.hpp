#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sorr/dataset.hpp"

namespace sorr {

// Two-class 2-D Gaussian data with optional planted outliers.
//   red  (+1): N((2, 0), 0.4 I)
//   blue (-1): equal mixture of N((-2, 1.5), 0.4 I) and N((-2, -1.5), 0.4 I)
//   balanced: 100 red / 100 blue;  imbalanced: 20 red / 180 blue.
// Outliers replace blue samples and sit at (3.5, 0) + N(0, 0.1^2 I), still
// labelled blue.
struct SyntheticSpec {
  bool balanced = true;
  int n_outliers = 0;
  std::uint64_t seed = 0;
};

inline constexpr int kSyntheticSize = 200;
inline constexpr int kSyntheticMaxOutliers = 20;

Dataset gen_synthetic(const SyntheticSpec& spec);

enum class NoiseMode { symmetric, asymmetric_map, multilabel_symmetric };

NoiseMode noise_mode_from_string(const std::string& name);
std::string to_string(NoiseMode mode);

struct NoiseSpec {
  NoiseMode mode = NoiseMode::symmetric;
  double p = 0.0;
  std::map<int, int> flip_map;  // 0-based class -> class
  std::uint64_t seed = 0;
};

// Rewrites labels only.  symmetric: each sample is selected with probability
// p and moved to a uniformly random different class.  asymmetric_map: samples
// whose class is a key of flip_map move to its image with probability p.
// multilabel_symmetric: each selected sample has every label replaced by a
// uniformly random label outside its original set (duplicates collapsed).
// Sets `corrupted` / `flip_count` on the result.
Dataset inject_noise(const Dataset& data, const NoiseSpec& spec);

// Seeded uniform shuffle cut into consecutive parts.  Part sizes are
// round(fraction * n); the last part takes the remainder.
std::vector<std::vector<std::size_t>> split_indices(
    std::size_t n, const std::vector<double>& fractions, std::uint64_t seed);

std::vector<Dataset> split_dataset(const Dataset& data,
                                   const std::vector<double>& fractions,
                                   std::uint64_t seed);

struct Standardization {
  Eigen::VectorXd mean;
  Eigen::VectorXd stddev;  // population std; 0 marks an untouched column

  static Standardization fit(const Dataset& train);
  void apply(Dataset& data) const;
};

// Fits on `train`, then transforms train and every dataset in `others`.
Standardization standardize(Dataset& train, const std::vector<Dataset*>& others = {});

}  // namespace sorr
