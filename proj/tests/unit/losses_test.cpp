#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "sorr/errors.hpp"
#include "sorr/losses.hpp"

namespace sorr {
namespace {

TEST(MarginLoss, LogisticIsNormalizedAtZero) {
  EXPECT_DOUBLE_EQ(margin_loss(MarginLossKind::logistic, 0.0).value, 1.0);
}

TEST(MarginLoss, LogisticValueAndDerivative) {
  const double want = std::log2(1.0 + std::exp(-1.0));
  const LossValue v = margin_loss(MarginLossKind::logistic, 1.0);
  EXPECT_NEAR(v.value, want, 1e-15);
  const double h = 1e-6;
  const double fd = (margin_loss(MarginLossKind::logistic, 1.0 + h).value -
                     margin_loss(MarginLossKind::logistic, 1.0 - h).value) /
                    (2 * h);
  EXPECT_NEAR(v.derivative, fd, 1e-5 * std::abs(fd));
}

TEST(MarginLoss, HingeBeyondMarginIsFlat) {
  const LossValue v = margin_loss(MarginLossKind::hinge, 2.0);
  EXPECT_DOUBLE_EQ(v.value, 0.0);
  EXPECT_DOUBLE_EQ(v.derivative, 0.0);
  EXPECT_DOUBLE_EQ(margin_loss(MarginLossKind::hinge, -0.5).value, 1.5);
  EXPECT_DOUBLE_EQ(margin_loss(MarginLossKind::hinge, -0.5).derivative, -1.0);
}

TEST(MarginLoss, LogisticStableForLargeMargins) {
  EXPECT_TRUE(std::isfinite(margin_loss(MarginLossKind::logistic, -800.0).value));
  EXPECT_NEAR(margin_loss(MarginLossKind::logistic, -800.0).value, 800.0 / std::numbers::ln2, 1e-9);
  EXPECT_GE(margin_loss(MarginLossKind::logistic, 800.0).value, 0.0);
}

TEST(Softmax, SymmetricTwoClass) {
  const std::vector<double> scores{0.0, 0.0};
  const VectorLoss v = softmax_loss_grad(scores, 1);
  EXPECT_NEAR(v.value, std::log(2.0), 1e-15);
  EXPECT_NEAR(v.coeff(0), 0.5, 1e-15);
  EXPECT_NEAR(v.coeff(1), -0.5, 1e-15);
}

TEST(Softmax, ConfidentPredictionHasVanishingLoss) {
  const std::vector<double> scores{-5.0, 60.0, 1.0};
  EXPECT_LT(softmax_loss_grad(scores, 1).value, 1e-20);
  EXPECT_TRUE(std::isfinite(softmax_loss_grad(std::vector<double>{1e4, -1e4}, 1).value));
}

TEST(Softmax, GradientMatchesFiniteDifferences) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> scores(5);
  for (double& s : scores) {
    s = g(rng);
  }
  const VectorLoss v = softmax_loss_grad(scores, 3);
  for (int j = 0; j < 5; ++j) {
    const double h = 1e-6;
    std::vector<double> up = scores;
    std::vector<double> dn = scores;
    up[j] += h;
    dn[j] -= h;
    const double fd = (softmax_loss_grad(up, 3).value - softmax_loss_grad(dn, 3).value) / (2 * h);
    EXPECT_NEAR(v.coeff(j), fd, 1e-4 * std::max(std::abs(fd), 1e-3));
  }
}

TEST(Tkml, ZeroWhenTrueLabelIsWellInsideTopK) {
  // The first label is true (1-based label 1 on disk).
  const std::vector<double> scores{2.0, 1.0, 0.5, -0.3};
  const VectorLoss v = tkml_loss_subgrad(scores, LabelSet({0}), 2);
  EXPECT_DOUBLE_EQ(v.value, 0.0);
  EXPECT_DOUBLE_EQ(v.coeff.cwiseAbs().sum(), 0.0);
}

TEST(Tkml, WorkedExampleValueAndCoefficients) {
  const std::vector<double> scores{0.5, 2.0, 1.0, 0.2};
  const std::vector<double> hinges = tkml_label_hinges(scores, LabelSet({0}));
  const std::vector<double> want_h{1.0, 2.5, 1.5, 0.7};
  for (std::size_t j = 0; j < 4; ++j) {
    EXPECT_NEAR(hinges[j], want_h[j], 1e-15);
  }
  const VectorLoss v = tkml_loss_subgrad(scores, LabelSet({0}), 1);
  EXPECT_NEAR(v.value, 1.5, 1e-15);
  EXPECT_DOUBLE_EQ(v.coeff(2), 1.0);
  EXPECT_DOUBLE_EQ(v.coeff(0), -1.0);
  EXPECT_DOUBLE_EQ(v.coeff(1), 0.0);
  EXPECT_DOUBLE_EQ(v.coeff(3), 0.0);
}

TEST(Tkml, ZeroWhenAllTrueLabelsLeadWithMargin) {
  const std::vector<double> scores{5.0, -1.0, 4.0, 0.0};
  EXPECT_DOUBLE_EQ(tkml_loss_subgrad(scores, LabelSet({0, 2}), 2).value, 0.0);
}

TEST(Tkml, RejectsOutOfRangeKprime) {
  const std::vector<double> scores{0.1, 0.2, 0.3};
  EXPECT_THROW(tkml_loss_subgrad(scores, LabelSet({0}), 3), std::exception);
}

TEST(ConventionalMultilabel, WorkedExamples) {
  EXPECT_DOUBLE_EQ(conventional_multilabel_loss(std::vector<double>{2.0, 1.0, 0.5, -0.3},
                                                LabelSet({0})),
                   0.0);
  EXPECT_DOUBLE_EQ(conventional_multilabel_loss(std::vector<double>{0.5, 2.0, 1.0, 0.2},
                                                LabelSet({0})),
                   2.5);
}

TEST(ConventionalMultilabel, DominatesTkmlAtSetSize) {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> g(0.0, 1.5);
  for (int c = 0; c < 300; ++c) {
    std::vector<double> scores(6);
    for (double& s : scores) {
      s = g(rng);
    }
    const LabelSet Y({static_cast<int>(rng() % 3), 3 + static_cast<int>(rng() % 3)});
    EXPECT_GE(conventional_multilabel_loss(scores, Y) + 1e-12,
              tkml_loss_subgrad(scores, Y, static_cast<int>(Y.size())).value);
  }
}

TEST(MultilabelLogistic, MatchesPerLabelSum) {
  const std::vector<double> scores{0.3, -1.2, 2.0};
  const VectorLoss v = multilabel_logistic_loss(scores, LabelSet({1}));
  double want = 0.0;
  for (int j = 0; j < 3; ++j) {
    const double y = j == 1 ? 1.0 : -1.0;
    want += std::log1p(std::exp(-y * scores[static_cast<std::size_t>(j)]));
  }
  EXPECT_NEAR(v.value, want, 1e-12);
}

TEST(TkmlAorrObjective, SaddleEqualsRangeAverage) {
  const ValueSet s{0.9, 0.1, 0.5, 0.7, 0.3, 0.2};
  const RankedRange r{1, 4};
  const double lambda = kth_largest(s, 4);
  const double lambda_hat = kth_largest(s, 1) - lambda;
  EXPECT_NEAR(tkml_aorr_objective(s, lambda, lambda_hat, r), aorr_value(s, r), 1e-12);
}

TEST(TkmlAorrObjective, SaddleValueMatchesGridSearch) {
  // min over lambda of max over lambda_hat, searched on a grid that contains
  // every breakpoint.
  const ValueSet s{0.9, 0.1, 0.5, 0.7, 0.3};
  const RankedRange r{1, 3};
  double best_min = std::numeric_limits<double>::infinity();
  for (int a = -20; a <= 120; ++a) {
    const double lambda = a / 100.0;
    double inner_max = -std::numeric_limits<double>::infinity();
    for (int b = 0; b <= 150; ++b) {
      inner_max = std::max(inner_max, tkml_aorr_objective(s, lambda, b / 100.0, r));
    }
    best_min = std::min(best_min, inner_max);
  }
  EXPECT_NEAR(best_min, aorr_value(s, r), 1e-12);
}

TEST(TkmlAorrObjective, TrivialCases) {
  const ValueSet s{0.9, 0.1, 0.5};
  EXPECT_DOUBLE_EQ(tkml_aorr_objective(s, 0.25, 0.0, {0, 2}), 0.25);
  const ValueSet c{0.4, 0.4, 0.4, 0.4};
  EXPECT_DOUBLE_EQ(tkml_aorr_objective(c, 0.4, 0.0, {1, 3}), aorr_value(c, {1, 3}));
}

TEST(LabelSetType, NormalizesAndValidates) {
  const LabelSet Y({3, 1, 3});
  EXPECT_EQ(Y.labels(), (std::vector<int>{1, 3}));
  EXPECT_TRUE(Y.contains(3));
  EXPECT_FALSE(Y.contains(2));
  EXPECT_NO_THROW(Y.validate(5));
  EXPECT_THROW(Y.validate(3), std::exception);
  EXPECT_THROW(LabelSet({0, 1}).validate(2), std::exception);  // not a proper subset
  EXPECT_THROW(LabelSet().validate(4), std::exception);
}

TEST(LossNames, RoundTrip) {
  for (LossKind k : {LossKind::logistic, LossKind::hinge, LossKind::softmax, LossKind::tkml,
                     LossKind::multilabel_logistic}) {
    EXPECT_EQ(loss_kind_from_string(to_string(k)), k);
  }
  EXPECT_THROW(loss_kind_from_string("squared"), std::exception);
  EXPECT_EQ(model_outputs(LossKind::logistic, 2), 1);
  EXPECT_EQ(model_outputs(LossKind::softmax, 10), 10);
}

}  // namespace
}  // namespace sorr
