#pragma once

#include <cstdint>
#include <vector>

#include "sorr/dataset.hpp"
#include "sorr/losses.hpp"
#include "sorr/model.hpp"
#include "sorr/objective.hpp"
#include "sorr/ranked.hpp"

namespace sorr {

struct TrainConfig {
  RankedRange r{0, 1};
  int kprime = 1;
  double C = 1e4;
  double eta_outer = 0.01;  // warm-up rate (auto_train)
  double eta_inner = 0.01;  // step size of every inner / epoch update
  int outer_epochs = 5;
  int inner_epochs = 1000;
  int warmup_epochs = 100;
  std::size_t batch = 0;  // 0 = full batch, 1 = single sample, B = mini-batch
  std::uint64_t seed = 0;
  int patience = 3;
  int refresh_every = 10;  // inner steps between validation lambda refreshes
  bool bias = true;
  // Full-batch DCA only: return the best inner iterate of each convex
  // subproblem instead of the last one, so outer objectives never increase.
  bool keep_best = false;
  // Standard deviation of the Gaussian initial weights (0 = start at zero).
  double init_scale = 0.0;

  void validate() const;
};

struct LambdaPair {
  double lambda = 0.0;
  double lambda_hat = 0.0;
};

struct TrainReport {
  LinearModel model;
  double initial_objective = 0.0;
  std::vector<double> objective_trace;  // one entry per completed outer epoch
  std::vector<LambdaPair> lambdas;      // one entry per completed outer epoch
  long long wall_ms = 0;
  std::uint64_t seed = 0;
  int warmup_epochs_run = 0;
};

// sum_i grad s_i * 1[s_i > threshold].
ModelGradient phi_subgradient(const LinearModel& model, const Dataset& data,
                              const LossSpec& loss, double threshold);

// Difference-of-convex training of (1/n) psi_{m,k} + ||W||^2/(2C).  Each outer
// round linearizes the top-m sum at the current iterate; the inner loop runs
// subgradient steps on (theta, lambda) of the top-k variational form.  With
// batch = 0 the inner loop is full-batch; keep_best then returns the best
// iterate of the exact convex subproblem (so outer objectives never increase).  For the
// top-k multi-label loss the split is label-level: average of phi_{k'+1}
// minus average of phi_{k'} over the per-label hinges; r must then be (0, n).
TrainReport dca_train(const Dataset& data, const LossSpec& loss,
                      const TrainConfig& config);

// (lambda, lambda_hat) = (mean - 2 std, mean + std) of validation losses
// (population std); lambda is pulled to lambda_hat - 1e-6 when the spread
// vanishes.
LambdaPair lambda_pair_from_validation(const ValueSet& validation_losses);

inline constexpr double kLambdaGapEpsilon = 1e-6;

// Warm-up on the average loss (full batch, rate eta_outer, patience on the
// validation mean loss), then outer rounds with thresholds learned from the
// clean validation set.  Inner steps use rate eta_inner and mini-batches of
// `batch` samples (0 = full batch).
TrainReport auto_train(const Dataset& train, const Dataset& validation,
                       const LossSpec& loss, const TrainConfig& config);

// |{i : s_i > lambda_hat}|.
std::size_t estimate_noise_count(const ValueSet& train_losses, double lambda_hat);

// Simultaneous saddle updates on (theta, lambda, lambda_hat) of the combined
// top-k multi-label / ranked-range objective; lambda and lambda_hat start at
// 0 and are not projected.  One update per epoch in full-batch mode; with
// batch = B each epoch makes ceil(n/B) updates on shuffled mini-batches with
// counts scaled by n/B.  Runs outer_epochs epochs at rate eta_inner.
TrainReport tkml_aorr_train(const Dataset& data, const TrainConfig& config);

// Ranked ranges that turn the mini-batch update into known special cases.
enum class MinibatchPreset { osgd, itlm, mkl_sgd };
RankedRange minibatch_preset(MinibatchPreset preset, std::size_t batch,
                             std::size_t k = 1);

// Training-accuracy driven k schedule.
std::size_t adaptive_k(double train_accuracy, std::size_t n);

// Gradient descent on the regularized average loss for
// outer_epochs * inner_epochs steps at rate eta_inner (batch as above).
TrainReport sgd_average_train(const Dataset& data, const LossSpec& loss,
                              const TrainConfig& config);

}  // namespace sorr
