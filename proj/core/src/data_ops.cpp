#include "sorr/data_ops.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "sorr/errors.hpp"

namespace sorr {

Dataset gen_synthetic(const SyntheticSpec& spec) {
  if (spec.n_outliers < 0 || spec.n_outliers > kSyntheticMaxOutliers) {
    throw RangeError("n_outliers must lie in 0.." +
                     std::to_string(kSyntheticMaxOutliers));
  }
  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> noise(0.0, std::sqrt(0.4));
  std::normal_distribution<double> jitter(0.0, 0.1);
  const int n_red = spec.balanced ? kSyntheticSize / 2 : kSyntheticSize / 10;
  const int n_blue = kSyntheticSize - n_red;

  Dataset ds;
  ds.l = 2;
  ds.features.resize(kSyntheticSize, 2);
  ds.labels.resize(kSyntheticSize);
  int row = 0;
  for (int i = 0; i < n_red; ++i, ++row) {
    ds.features(row, 0) = 2.0 + noise(rng);
    ds.features(row, 1) = noise(rng);
    ds.labels[row] = 1;
  }
  for (int i = 0; i < n_blue; ++i, ++row) {
    if (i < spec.n_outliers) {
      ds.features(row, 0) = 3.5 + jitter(rng);
      ds.features(row, 1) = jitter(rng);
    } else {
      const double centre_y = (i % 2 == 0) ? 1.5 : -1.5;
      ds.features(row, 0) = -2.0 + noise(rng);
      ds.features(row, 1) = centre_y + noise(rng);
    }
    ds.labels[row] = 0;
  }
  ds.provenance = std::string("synthetic ") +
                  (spec.balanced ? "balanced" : "imbalanced") +
                  " outliers=" + std::to_string(spec.n_outliers) +
                  " seed=" + std::to_string(spec.seed);
  return ds;
}

NoiseMode noise_mode_from_string(const std::string& name) {
  for (NoiseMode m : {NoiseMode::symmetric, NoiseMode::asymmetric_map,
                      NoiseMode::multilabel_symmetric}) {
    if (to_string(m) == name) {
      return m;
    }
  }
  throw ParameterError("unknown noise mode '" + name + "'");
}

std::string to_string(NoiseMode mode) {
  switch (mode) {
    case NoiseMode::symmetric:
      return "symmetric";
    case NoiseMode::asymmetric_map:
      return "asymmetric_map";
    case NoiseMode::multilabel_symmetric:
      return "multilabel_symmetric";
  }
  return "unknown";
}

Dataset inject_noise(const Dataset& data, const NoiseSpec& spec) {
  if (!(spec.p >= 0.0 && spec.p <= 1.0)) {
    throw ParameterError("noise probability must lie in [0, 1]");
  }
  const bool ml_mode = spec.mode == NoiseMode::multilabel_symmetric;
  if (ml_mode != data.multilabel()) {
    throw ParameterError("noise mode " + to_string(spec.mode) +
                         " does not match the dataset's label type");
  }
  if (spec.mode == NoiseMode::asymmetric_map) {
    if (spec.flip_map.empty()) {
      throw ParameterError("asymmetric noise requires a flip map");
    }
    for (const auto& [from, to] : spec.flip_map) {
      if (from < 0 || from >= data.l || to < 0 || to >= data.l) {
        throw ParameterError("flip map entry " + std::to_string(from + 1) +
                             "->" + std::to_string(to + 1) +
                             " lies outside 1.." + std::to_string(data.l));
      }
    }
  }
  Dataset out = data;
  const std::size_t n = data.size();
  out.corrupted.assign(n, 0);
  out.flip_count = 0;
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);

  for (std::size_t i = 0; i < n; ++i) {
    const bool selected = coin(rng) < spec.p;
    switch (spec.mode) {
      case NoiseMode::symmetric: {
        if (!selected) {
          break;
        }
        std::uniform_int_distribution<int> pick(0, data.l - 2);
        int y = pick(rng);
        if (y >= data.labels[i]) {
          ++y;
        }
        out.labels[i] = y;
        break;
      }
      case NoiseMode::asymmetric_map: {
        auto it = spec.flip_map.find(data.labels[i]);
        if (selected && it != spec.flip_map.end()) {
          out.labels[i] = it->second;
        }
        break;
      }
      case NoiseMode::multilabel_symmetric: {
        if (!selected) {
          break;
        }
        const LabelSet& Y = data.label_sets[i];
        std::vector<int> complement;
        for (int j = 0; j < data.l; ++j) {
          if (!Y.contains(j)) {
            complement.push_back(j);
          }
        }
        std::uniform_int_distribution<std::size_t> pick(0, complement.size() - 1);
        std::vector<int> fresh;
        for (std::size_t r = 0; r < Y.size(); ++r) {
          fresh.push_back(complement[pick(rng)]);
        }
        out.label_sets[i] = LabelSet(std::move(fresh));
        break;
      }
    }
    const bool changed = data.multilabel()
                             ? !(out.label_sets[i] == data.label_sets[i])
                             : out.labels[i] != data.labels[i];
    if (changed) {
      out.corrupted[i] = 1;
      ++out.flip_count;
    }
  }
  out.provenance += (out.provenance.empty() ? "" : "; ") + std::string("noise=") +
                    to_string(spec.mode) + " p=" + std::to_string(spec.p) +
                    " seed=" + std::to_string(spec.seed) +
                    " flips=" + std::to_string(out.flip_count);
  return out;
}

std::vector<std::vector<std::size_t>> split_indices(
    std::size_t n, const std::vector<double>& fractions, std::uint64_t seed) {
  if (fractions.empty()) {
    throw ParameterError("split needs at least one fraction");
  }
  double total = 0.0;
  for (double f : fractions) {
    if (!(f >= 0.0)) {
      throw ParameterError("split fractions must be non-negative");
    }
    total += f;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw ParameterError("split fractions must sum to 1 (got " +
                         std::to_string(total) + ")");
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);

  std::vector<std::vector<std::size_t>> parts(fractions.size());
  std::size_t start = 0;
  for (std::size_t p = 0; p < fractions.size(); ++p) {
    std::size_t count = n - start;
    if (p + 1 < fractions.size()) {
      count = std::min(count, static_cast<std::size_t>(
                                  std::llround(fractions[p] * static_cast<double>(n))));
    }
    parts[p].assign(order.begin() + static_cast<long>(start),
                    order.begin() + static_cast<long>(start + count));
    start += count;
  }
  return parts;
}

std::vector<Dataset> split_dataset(const Dataset& data,
                                   const std::vector<double>& fractions,
                                   std::uint64_t seed) {
  std::vector<Dataset> out;
  for (const auto& idx : split_indices(data.size(), fractions, seed)) {
    out.push_back(data.subset(idx));
  }
  return out;
}

Standardization Standardization::fit(const Dataset& train) {
  if (train.size() == 0) {
    throw ParameterError("cannot standardize with an empty training set");
  }
  Standardization s;
  const double n = static_cast<double>(train.size());
  s.mean = train.features.colwise().sum().transpose() / n;
  s.stddev.resize(train.features.cols());
  for (Eigen::Index j = 0; j < train.features.cols(); ++j) {
    const double var =
        (train.features.col(j).array() - s.mean[j]).square().sum() / n;
    s.stddev[j] = var > 0.0 ? std::sqrt(var) : 0.0;
  }
  return s;
}

void Standardization::apply(Dataset& data) const {
  if (data.features.cols() != mean.size()) {
    throw ShapeError("standardization fitted on a different feature width");
  }
  for (Eigen::Index j = 0; j < data.features.cols(); ++j) {
    if (stddev[j] > 0.0) {
      data.features.col(j) =
          (data.features.col(j).array() - mean[j]) / stddev[j];
    }
  }
}

Standardization standardize(Dataset& train, const std::vector<Dataset*>& others) {
  const Standardization s = Standardization::fit(train);
  s.apply(train);
  for (Dataset* d : others) {
    s.apply(*d);
  }
  return s;
}

}  // namespace sorr
