#pragma once

#include <Eigen/Core>
#include <vector>

#include "sorr/losses.hpp"

namespace sorr {

// Fraction misclassified.  A single-column score matrix is read as binary
// margins (positive -> class 1); wider matrices decide by argmax with ties
// to the lowest index.
double error_rate(const Eigen::Ref<const Eigen::MatrixXd>& scores,
                  const std::vector<int>& truth);

// Fraction whose true class is among the k highest-scoring classes.
double topk_accuracy(const Eigen::Ref<const Eigen::MatrixXd>& scores,
                     const std::vector<int>& truth, int k);

// Fraction with Z_i subset of Y_i or Y_i subset of Z_i, Z_i the top-k labels.
double topk_multilabel_accuracy(const Eigen::Ref<const Eigen::MatrixXd>& scores,
                                const std::vector<LabelSet>& truth, int k);

// Mean over samples of (1/|Y|) sum_{j in Y} |{t in Y : rank t <= rank j}| / rank j.
double average_precision(const Eigen::Ref<const Eigen::MatrixXd>& scores,
                         const std::vector<LabelSet>& truth);

// Labels ordered by descending score, ties to the lowest index.
std::vector<int> label_ranking(const Eigen::Ref<const Eigen::VectorXd>& scores);

}  // namespace sorr
