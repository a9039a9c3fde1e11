#include <gtest/gtest.h>

#include <random>

#include "sorr/metrics.hpp"

namespace sorr {
namespace {

Eigen::MatrixXd rows(std::initializer_list<std::initializer_list<double>> r) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(r.size()),
                    static_cast<Eigen::Index>(r.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& row : r) {
    Eigen::Index j = 0;
    for (double v : row) {
      m(i, j++) = v;
    }
    ++i;
  }
  return m;
}

TEST(ErrorRate, BinaryMargins) {
  const Eigen::MatrixXd margins = rows({{1.0}, {-1.0}, {1.0}});
  EXPECT_DOUBLE_EQ(error_rate(margins, {1, 1, 1}), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(error_rate(margins, {1, 0, 1}), 0.0);
  EXPECT_DOUBLE_EQ(error_rate(margins, {0, 1, 0}), 1.0);
}

TEST(ErrorRate, ArgmaxTiesGoToLowestIndex) {
  const Eigen::MatrixXd s = rows({{0.5, 0.5, 0.1}});
  EXPECT_DOUBLE_EQ(error_rate(s, {0}), 0.0);
  EXPECT_DOUBLE_EQ(error_rate(s, {1}), 1.0);
}

TEST(TopK, WorkedExamples) {
  const Eigen::MatrixXd s = rows({{0.1, 0.5, 0.4}});
  EXPECT_DOUBLE_EQ(topk_accuracy(s, {2}, 2), 1.0);
  EXPECT_DOUBLE_EQ(topk_accuracy(s, {2}, 1), 0.0);
  EXPECT_DOUBLE_EQ(topk_accuracy(s, {0}, 3), 1.0);
  EXPECT_THROW(topk_accuracy(s, {0}, 4), std::exception);
}

TEST(TopK, NonDecreasingAndTopOneMatchesError) {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::MatrixXd s(50, 6);
  std::vector<int> y;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    s.data()[i] = g(rng);
  }
  for (int i = 0; i < 50; ++i) {
    y.push_back(static_cast<int>(rng() % 6));
  }
  double prev = 0.0;
  for (int k = 1; k <= 6; ++k) {
    const double a = topk_accuracy(s, y, k);
    EXPECT_GE(a, prev);
    prev = a;
  }
  EXPECT_DOUBLE_EQ(prev, 1.0);
  EXPECT_DOUBLE_EQ(topk_accuracy(s, y, 1), 1.0 - error_rate(s, y));
}

TEST(TopKMultilabel, InclusionRule) {
  const Eigen::MatrixXd s = rows({{0.9, 0.1, 0.8, 0.0}});
  const std::vector<LabelSet> Y{LabelSet({0, 2})};
  EXPECT_DOUBLE_EQ(topk_multilabel_accuracy(s, Y, 2), 1.0);  // Z = Y
  EXPECT_DOUBLE_EQ(topk_multilabel_accuracy(s, Y, 1), 1.0);  // Z subset of Y
  EXPECT_DOUBLE_EQ(topk_multilabel_accuracy(s, Y, 3), 1.0);  // Y subset of Z
  const Eigen::MatrixXd t = rows({{0.1, 0.9, 0.8, 0.0}});
  EXPECT_DOUBLE_EQ(topk_multilabel_accuracy(t, Y, 2), 0.0);  // Z = {1, 2}
}

TEST(AveragePrecision, WorkedExamples) {
  // True labels ranked 1 and 3.
  const Eigen::MatrixXd s = rows({{0.9, 0.1, 0.5, 0.0}});
  EXPECT_NEAR(average_precision(s, {LabelSet({0, 2})}), 1.0, 1e-15);
  const Eigen::MatrixXd t = rows({{0.9, 0.5, 0.1, 0.0}});
  EXPECT_NEAR(average_precision(t, {LabelSet({0, 2})}), 5.0 / 6.0, 1e-15);
}

TEST(AveragePrecision, InvariantToMonotoneTransform) {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::MatrixXd s(20, 5);
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    s.data()[i] = g(rng);
  }
  std::vector<LabelSet> Y;
  for (int i = 0; i < 20; ++i) {
    Y.push_back(LabelSet({static_cast<int>(rng() % 5), static_cast<int>(rng() % 5)}));
  }
  const Eigen::MatrixXd t = (s.array() * 3.0).exp().matrix();
  const double a = average_precision(s, Y);
  EXPECT_DOUBLE_EQ(a, average_precision(t, Y));
  EXPECT_GE(a, 0.0);
  EXPECT_LE(a, 1.0);
}

TEST(LabelRanking, DescendingWithIndexTies) {
  Eigen::VectorXd v(4);
  v << 0.2, 0.7, 0.7, -1.0;
  EXPECT_EQ(label_ranking(v), (std::vector<int>{1, 2, 0, 3}));
}

}  // namespace
}  // namespace sorr
