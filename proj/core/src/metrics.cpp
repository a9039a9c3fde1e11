#include "sorr/metrics.hpp"

#include <algorithm>
#include <numeric>

#include "sorr/errors.hpp"

namespace sorr {

namespace {

void checkRows(Eigen::Index rows, std::size_t truth) {
  if (static_cast<std::size_t>(rows) != truth) {
    throw ShapeError("score rows (" + std::to_string(rows) +
                     ") differ from the number of labels (" +
                     std::to_string(truth) + ")");
  }
  if (truth == 0) {
    throw ParameterError("no samples to evaluate");
  }
}

}  // namespace

std::vector<int> label_ranking(const Eigen::Ref<const Eigen::VectorXd>& scores) {
  std::vector<int> order(static_cast<std::size_t>(scores.size()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&scores](int a, int b) { return scores[a] > scores[b]; });
  return order;
}

double error_rate(const Eigen::Ref<const Eigen::MatrixXd>& scores,
                  const std::vector<int>& truth) {
  checkRows(scores.rows(), truth.size());
  std::size_t wrong = 0;
  for (Eigen::Index i = 0; i < scores.rows(); ++i) {
    int predicted = 0;
    if (scores.cols() == 1) {
      predicted = scores(i, 0) > 0.0 ? 1 : 0;
    } else {
      scores.row(i).maxCoeff(&predicted);
    }
    wrong += predicted != truth[static_cast<std::size_t>(i)];
  }
  return static_cast<double>(wrong) / static_cast<double>(truth.size());
}

double topk_accuracy(const Eigen::Ref<const Eigen::MatrixXd>& scores,
                     const std::vector<int>& truth, int k) {
  checkRows(scores.rows(), truth.size());
  if (k < 1 || k > scores.cols()) {
    throw RangeError("k=" + std::to_string(k) + " outside 1.." +
                     std::to_string(scores.cols()));
  }
  std::size_t hit = 0;
  for (Eigen::Index i = 0; i < scores.rows(); ++i) {
    const std::vector<int> order = label_ranking(scores.row(i).transpose());
    const int y = truth[static_cast<std::size_t>(i)];
    hit += std::find(order.begin(), order.begin() + k, y) != order.begin() + k;
  }
  return static_cast<double>(hit) / static_cast<double>(truth.size());
}

double topk_multilabel_accuracy(const Eigen::Ref<const Eigen::MatrixXd>& scores,
                                const std::vector<LabelSet>& truth, int k) {
  checkRows(scores.rows(), truth.size());
  if (k < 1 || k >= scores.cols()) {
    throw RangeError("k=" + std::to_string(k) + " outside 1.." +
                     std::to_string(scores.cols() - 1));
  }
  std::size_t hit = 0;
  for (Eigen::Index i = 0; i < scores.rows(); ++i) {
    std::vector<int> Z = label_ranking(scores.row(i).transpose());
    Z.resize(static_cast<std::size_t>(k));
    std::sort(Z.begin(), Z.end());
    const std::vector<int>& Y = truth[static_cast<std::size_t>(i)].labels();
    const bool z_in_y = std::includes(Y.begin(), Y.end(), Z.begin(), Z.end());
    const bool y_in_z = std::includes(Z.begin(), Z.end(), Y.begin(), Y.end());
    hit += z_in_y || y_in_z;
  }
  return static_cast<double>(hit) / static_cast<double>(truth.size());
}

double average_precision(const Eigen::Ref<const Eigen::MatrixXd>& scores,
                         const std::vector<LabelSet>& truth) {
  checkRows(scores.rows(), truth.size());
  long double total = 0.0L;
  for (Eigen::Index i = 0; i < scores.rows(); ++i) {
    const LabelSet& Y = truth[static_cast<std::size_t>(i)];
    if (Y.size() == 0) {
      throw ParameterError("average precision needs non-empty label sets");
    }
    const std::vector<int> order = label_ranking(scores.row(i).transpose());
    // Walk down the ranking; at each true label, precision = hits / rank.
    long double per_sample = 0.0L;
    std::size_t hits = 0;
    for (std::size_t r = 0; r < order.size(); ++r) {
      if (Y.contains(order[r])) {
        ++hits;
        per_sample += static_cast<long double>(hits) / static_cast<long double>(r + 1);
      }
    }
    total += per_sample / static_cast<long double>(Y.size());
  }
  return static_cast<double>(total / static_cast<long double>(truth.size()));
}

}  // namespace sorr
