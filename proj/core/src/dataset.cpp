#include "sorr/dataset.hpp"

#include "sorr/errors.hpp"

namespace sorr {

void Dataset::validate() const {
  const std::size_t n = size();
  if (n == 0) {
    throw ParameterError("dataset is empty");
  }
  if (features.cols() < 1) {
    throw ShapeError("dataset has no feature columns");
  }
  if (l < 2) {
    throw ParameterError("dataset needs at least two labels");
  }
  if (multilabel()) {
    if (label_sets.size() != n || !labels.empty()) {
      throw ShapeError("multi-label dataset must hold one label set per row");
    }
    for (const LabelSet& Y : label_sets) {
      Y.validate(l);
    }
  } else {
    if (labels.size() != n) {
      throw ShapeError("dataset must hold one label per row");
    }
    for (int y : labels) {
      if (y < 0 || y >= l) {
        throw RangeError("label " + std::to_string(y) + " outside 0.." +
                         std::to_string(l - 1));
      }
    }
  }
  if (!corrupted.empty() && corrupted.size() != n) {
    throw ShapeError("corruption flags must cover every row");
  }
}

Dataset Dataset::subset(const std::vector<std::size_t>& idx) const {
  Dataset out;
  out.l = l;
  out.provenance = provenance;
  out.features.resize(static_cast<Eigen::Index>(idx.size()), features.cols());
  for (std::size_t r = 0; r < idx.size(); ++r) {
    if (idx[r] >= size()) {
      throw RangeError("row index " + std::to_string(idx[r]) +
                       " outside the dataset");
    }
    out.features.row(static_cast<Eigen::Index>(r)) =
        features.row(static_cast<Eigen::Index>(idx[r]));
    if (multilabel()) {
      out.label_sets.push_back(label_sets[idx[r]]);
    } else {
      out.labels.push_back(labels[idx[r]]);
    }
    if (!corrupted.empty()) {
      out.corrupted.push_back(corrupted[idx[r]]);
      out.flip_count += corrupted[idx[r]];
    }
  }
  return out;
}

}  // namespace sorr
