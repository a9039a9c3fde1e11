#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "sorr/data_ops.hpp"
#include "sorr/errors.hpp"
#include "sorr/metrics.hpp"
#include "sorr/objective.hpp"
#include "sorr/optim.hpp"

namespace sorr {
namespace {

Dataset oneDimensional(const std::vector<double>& x, const std::vector<int>& labels) {
  Dataset d;
  d.features.resize(static_cast<Eigen::Index>(x.size()), 1);
  for (std::size_t i = 0; i < x.size(); ++i) {
    d.features(static_cast<Eigen::Index>(i), 0) = x[i];
  }
  d.labels = labels;
  d.l = 2;
  return d;
}

const LossSpec kLogistic{LossKind::logistic, 1};
const LossSpec kHinge{LossKind::hinge, 1};

TEST(PhiSubgradient, ThresholdExtremes) {
  const Dataset data = gen_synthetic({true, 0, 1});
  LinearModel model(1, 2, true);
  model.weights << 0.3, -0.2;
  (*model.bias)(0) = 0.1;
  const SampleLosses s = evaluate_losses(model, data, kLogistic, true);
  const ModelGradient none = phi_subgradient(model, data, kLogistic, s.values.maxCoeff() + 1.0);
  EXPECT_EQ(none.weights.norm(), 0.0);
  EXPECT_EQ(none.bias.norm(), 0.0);
  const ModelGradient all = phi_subgradient(model, data, kLogistic, s.values.minCoeff() - 1.0);
  const ModelGradient full = weighted_gradient(model, data, s, Eigen::VectorXd::Ones(data.size()));
  EXPECT_NEAR((all.weights - full.weights).norm(), 0.0, 1e-12);
  EXPECT_NEAR((all.bias - full.bias).norm(), 0.0, 1e-12);
}

TEST(PhiSubgradient, ThresholdSelectsExactlyTopM) {
  Eigen::VectorXd losses(5);
  losses << 0.4, 2.0, 1.1, 0.9, 3.0;
  const double t = phi_threshold(losses, 2);
  EXPECT_EQ((losses.array() > t).count(), 2);
  EXPECT_TRUE(std::isinf(phi_threshold(losses, 0)));
}

TEST(Dca, OneDimensionalThresholdIgnoresTheMislabeledPoint) {
  // Inliers: negatives at x < 0, positives at x > 0; one positive planted at
  // x = -3.  With k = 2, m = 1 the single worst loss is discarded.
  const std::vector<double> x{-3.0, -2.5, -2.0, -1.5, -1.0, -0.5, 0.5, 1.0, 1.5, 2.0, 2.5};
  const std::vector<int> y{1, 0, 0, 0, 0, 0, 1, 1, 1, 1, 1};
  const Dataset data = oneDimensional(x, y);
  TrainConfig cfg;
  cfg.r = {1, 2};
  cfg.C = 1e4;
  cfg.eta_inner = 0.05;
  cfg.outer_epochs = 10;
  cfg.inner_epochs = 2000;
  const TrainReport rep = dca_train(data, kHinge, cfg);
  // Exhaustive threshold oracle: best inlier accuracy of any threshold.
  int oracle_errors = static_cast<int>(x.size());
  for (std::size_t c = 0; c + 1 < x.size(); ++c) {
    const double thr = 0.5 * (x[c] + x[c + 1]);
    int errs = 0;
    for (std::size_t i = 1; i < x.size(); ++i) {
      errs += (x[i] > thr) != (y[i] == 1);
    }
    oracle_errors = std::min(oracle_errors, errs);
  }
  ASSERT_EQ(oracle_errors, 0);
  const Eigen::MatrixXd scores = predict_scores_batch(rep.model, data.features);
  int inlier_errors = 0;
  for (std::size_t i = 1; i < x.size(); ++i) {
    inlier_errors += (scores(static_cast<Eigen::Index>(i), 0) > 0) != (y[i] == 1);
  }
  EXPECT_EQ(inlier_errors, oracle_errors);
}

TEST(Dca, FullRangeMatchesAverageLossDescent) {
  Dataset data = gen_synthetic({true, 0, 2});
  TrainConfig cfg;
  cfg.r = {0, data.size()};
  cfg.C = 100.0;
  cfg.eta_inner = 0.5;
  cfg.outer_epochs = 4;
  cfg.inner_epochs = 1500;
  const TrainReport dca = dca_train(data, kLogistic, cfg);
  const TrainReport gd = sgd_average_train(data, kLogistic, cfg);
  EXPECT_NEAR(average_objective(dca.model, data, kLogistic, cfg.C),
              average_objective(gd.model, data, kLogistic, cfg.C), 1e-3);
}

TEST(Dca, KeepBestGivesMonotoneOuterObjective) {
  const Dataset data = gen_synthetic({true, 2, 3}).subset({0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 100,
                                                           101, 102, 103, 104, 105, 106, 107,
                                                           108, 109, 110, 111, 112, 113});
  TrainConfig cfg;
  cfg.r = {2, 8};
  cfg.C = 50.0;
  cfg.eta_inner = 0.05;
  cfg.outer_epochs = 6;
  cfg.inner_epochs = 800;
  cfg.keep_best = true;
  const TrainReport rep = dca_train(data, kLogistic, cfg);
  double prev = rep.initial_objective;
  for (double v : rep.objective_trace) {
    EXPECT_LE(v, prev + 1e-6);
    prev = v;
  }
}

TEST(Dca, DeterministicForFixedSeed) {
  const Dataset data = gen_synthetic({true, 1, 4});
  TrainConfig cfg;
  cfg.r = {1, 10};
  cfg.batch = 16;
  cfg.outer_epochs = 2;
  cfg.inner_epochs = 200;
  cfg.seed = 42;
  const TrainReport a = dca_train(data, kLogistic, cfg);
  const TrainReport b = dca_train(data, kLogistic, cfg);
  EXPECT_TRUE(a.model == b.model);
  EXPECT_EQ(a.objective_trace, b.objective_trace);
}

TEST(Dca, RejectsInvalidRange) {
  const Dataset data = gen_synthetic({true, 0, 4});
  TrainConfig cfg;
  cfg.r = {5, 5};
  EXPECT_THROW(dca_train(data, kLogistic, cfg), std::exception);
  cfg.r = {0, data.size() + 1};
  EXPECT_THROW(dca_train(data, kLogistic, cfg), std::exception);
}

TEST(LambdaPair, PopulationStdRule) {
  const LambdaPair p = lambda_pair_from_validation(ValueSet{1.0, 2.0, 3.0});
  EXPECT_NEAR(p.lambda_hat, 2.0 + std::sqrt(2.0 / 3.0), 1e-12);
  EXPECT_NEAR(p.lambda, 2.0 - 2.0 * std::sqrt(2.0 / 3.0), 1e-12);
  EXPECT_NEAR(p.lambda_hat, 2.8165, 1e-4);
  EXPECT_NEAR(p.lambda, 0.3670, 1e-4);
}

TEST(LambdaPair, ConstantLossesFallBack) {
  const LambdaPair p = lambda_pair_from_validation(ValueSet{0.7, 0.7, 0.7});
  EXPECT_DOUBLE_EQ(p.lambda_hat, 0.7);
  EXPECT_DOUBLE_EQ(p.lambda, 0.7 - kLambdaGapEpsilon);
}

TEST(NoiseCount, CountsStrictExceedances) {
  EXPECT_EQ(estimate_noise_count(ValueSet{1.0, 2.0, 3.0, 4.0}, 2.5), 2u);
  EXPECT_EQ(estimate_noise_count(ValueSet{1.0, 2.0}, 9.0), 0u);
}

TEST(AdaptiveK, Schedule) {
  EXPECT_EQ(adaptive_k(0.85, 1000), 250u);
  EXPECT_EQ(adaptive_k(0.50, 1000), 1000u);
  EXPECT_EQ(adaptive_k(0.996, 1000), 31u);
}

TEST(MinibatchPresets, KnownSpecialCases) {
  const RankedRange osgd = minibatch_preset(MinibatchPreset::osgd, 32, 8);
  EXPECT_EQ(osgd.m, 0u);
  EXPECT_EQ(osgd.k, 8u);
  const RankedRange mkl = minibatch_preset(MinibatchPreset::mkl_sgd, 32, 8);
  EXPECT_EQ(mkl.k, 32u);
  EXPECT_EQ(mkl.m, 31u);
  const RankedRange itlm = minibatch_preset(MinibatchPreset::itlm, 32, 8);
  EXPECT_EQ(itlm.k, 32u);
  EXPECT_EQ(itlm.m, 24u);
}

TEST(AverageTrainer, FullBatchObjectiveNeverIncreases) {
  const Dataset data = gen_synthetic({true, 0, 6});
  TrainConfig cfg;
  cfg.r = {0, data.size()};
  cfg.eta_inner = 0.1;
  cfg.outer_epochs = 20;
  cfg.inner_epochs = 50;
  const TrainReport rep = sgd_average_train(data, kLogistic, cfg);
  double prev = rep.initial_objective;
  for (double v : rep.objective_trace) {
    EXPECT_LE(v, prev + 1e-12);
    prev = v;
  }
}

TEST(AverageTrainer, SeparableDataIsFitExactly) {
  const Dataset data = gen_synthetic({true, 0, 7});
  TrainConfig cfg;
  cfg.r = {0, data.size()};
  cfg.eta_inner = 0.5;
  cfg.outer_epochs = 10;
  cfg.inner_epochs = 500;
  const TrainReport rep = sgd_average_train(data, kLogistic, cfg);
  EXPECT_EQ(error_rate(predict_scores_batch(rep.model, data.features), data.labels), 0.0);
}

TEST(TkmlAorrTrainer, InactiveIndicatorsMoveOnlyThresholds) {
  // At the zero model every per-label hinge equals 1, so each loss is 1 and
  // no sample lies inside the (lambda, lambda + lambda_hat) band while
  // lambda_hat stays below 1: theta is untouched, lambda falls by eta per
  // epoch and lambda_hat rises by eta (n-m)/(k-m).
  Dataset data;
  data.features = Eigen::MatrixXd::Ones(4, 2);
  data.l = 3;
  for (int i = 0; i < 4; ++i) {
    data.label_sets.push_back(LabelSet({i % 3}));
  }
  TrainConfig cfg;
  cfg.r = {1, 3};
  cfg.kprime = 1;
  cfg.eta_inner = 0.1;
  cfg.outer_epochs = 3;
  const TrainReport rep = tkml_aorr_train(data, cfg);
  ASSERT_EQ(rep.lambdas.size(), 3u);
  for (int e = 0; e < 3; ++e) {
    EXPECT_NEAR(rep.lambdas[e].lambda, -0.1 * (e + 1), 1e-15);
    EXPECT_NEAR(rep.lambdas[e].lambda_hat, 0.1 * 1.5 * (e + 1), 1e-15);
  }
  EXPECT_EQ(rep.model.weights.norm(), 0.0);
  EXPECT_EQ(rep.model.bias->norm(), 0.0);
}

TEST(TkmlAorrTrainer, TwoSampleHandEvaluation) {
  // Two samples, l = 2, r = (0, 1), lambda = lambda_hat = 0 at the start.
  // Losses at the zero model are both 1 > lambda, but lambda_hat = 0 is not
  // above the excess 1, so the first update only moves the thresholds:
  // lambda <- 0 - eta * 1, lambda_hat <- 0 + eta * (2 - 0) / 1.
  Dataset data;
  data.features = Eigen::MatrixXd::Ones(2, 1);
  data.l = 2;
  data.label_sets = {LabelSet({0}), LabelSet({1})};
  TrainConfig cfg;
  cfg.r = {0, 1};
  cfg.eta_inner = 0.25;
  cfg.outer_epochs = 1;
  const TrainReport rep = tkml_aorr_train(data, cfg);
  EXPECT_DOUBLE_EQ(rep.lambdas[0].lambda, -0.25);
  EXPECT_DOUBLE_EQ(rep.lambdas[0].lambda_hat, 0.5);
}

TEST(AutoTrainer, NoNoiseTracksAverageTraining) {
  Dataset pool = gen_synthetic({true, 0, 12});
  std::vector<Dataset> parts = split_dataset(pool, {0.7, 0.3}, 1);
  TrainConfig cfg;
  cfg.r = {0, parts[0].size()};
  cfg.eta_outer = 0.1;
  cfg.eta_inner = 0.1;
  cfg.outer_epochs = 5;
  cfg.inner_epochs = 100;
  cfg.warmup_epochs = 100;
  cfg.patience = 1000;
  const TrainReport a = auto_train(parts[0], parts[1], kLogistic, cfg);
  const TrainReport b = sgd_average_train(parts[0], kLogistic, cfg);
  const double acc_a =
      1.0 - error_rate(predict_scores_batch(a.model, parts[1].features), parts[1].labels);
  const double acc_b =
      1.0 - error_rate(predict_scores_batch(b.model, parts[1].features), parts[1].labels);
  EXPECT_NEAR(acc_a, acc_b, 0.005);
}

}  // namespace
}  // namespace sorr
