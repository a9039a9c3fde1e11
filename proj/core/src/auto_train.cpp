#include <chrono>
#include <cmath>
#include <limits>

#include "sorr/errors.hpp"
#include "sorr/optim.hpp"
#include "sorr/train_internal.hpp"

namespace sorr {

using namespace detail;

namespace {

Eigen::VectorXd lossesOf(const LinearModel& model, const Dataset& data,
                         const LossSpec& loss) {
  return evaluate_losses(model, data, loss, false).values;
}

// Mean over samples of the loss truncated to [lambda, lambda_hat].
double truncatedObjective(const Eigen::VectorXd& losses, const LambdaPair& lp) {
  const double cap = lp.lambda_hat - lp.lambda;
  return (losses.array() - lp.lambda).max(0.0).min(cap).mean();
}

}  // namespace

TrainReport auto_train(const Dataset& train, const Dataset& validation,
                       const LossSpec& loss, const TrainConfig& config) {
  config.validate();
  train.validate();
  if (validation.size() == 0) {
    throw ParameterError("validation set is empty");
  }
  validation.validate();
  const auto start = std::chrono::steady_clock::now();
  const std::size_t n = train.size();
  const double nd = static_cast<double>(n);
  std::mt19937_64 rng(config.seed);
  TrainReport report;
  report.seed = config.seed;
  LinearModel model = initial_model(train, loss, config);
  report.initial_objective = average_objective(model, train, loss, config.C);

  // Phase 1: average-loss warm-up with patience on the validation loss.
  double best_val = std::numeric_limits<double>::infinity();
  int stale = 0;
  const Eigen::VectorXd ones = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(n), 1.0 / nd);
  for (int e = 0; e < config.warmup_epochs; ++e) {
    const SampleLosses s = evaluate_losses(model, train, loss, true);
    ModelGradient g = weighted_gradient(model, train, s, ones);
    g.weights += model.weights / config.C;
    apply_step(model, g, config.eta_outer);
    ++report.warmup_epochs_run;
    const double val = lossesOf(model, validation, loss).mean();
    check_finite(model, val, e);
    if (val < best_val) {
      best_val = val;
      stale = 0;
    } else if (++stale >= config.patience) {
      break;
    }
  }

  // Phase 2: thresholds learned from the clean validation losses.
  LambdaPair lp = lambda_pair_from_validation(to_value_set(lossesOf(model, validation, loss)));
  for (int t = 0; t < config.outer_epochs; ++t) {
    const SampleLosses full = evaluate_losses(model, train, loss, true);
    const Eigen::VectorXd above = (full.values.array() > lp.lambda_hat).cast<double>() / nd;
    const ModelGradient theta_hat = weighted_gradient(model, train, full, above);
    for (int step = 0; step < config.inner_epochs; ++step) {
      std::vector<std::size_t> rows;
      if (config.batch > 0) {
        rows = sample_batch(rng, n, config.batch);
      }
      const SampleLosses s = evaluate_losses(model, train, loss, true, rows);
      const double scale = 1.0 / static_cast<double>(s.values.size());
      const Eigen::VectorXd active = (s.values.array() > lp.lambda).cast<double>() * scale;
      ModelGradient g = weighted_gradient(model, train, s, active, rows);
      add_scaled(g, theta_hat, -1.0);
      g.weights += model.weights / config.C;
      apply_step(model, g, config.eta_inner);
      if ((step + 1) % config.refresh_every == 0) {
        const LambdaPair fresh =
            lambda_pair_from_validation(to_value_set(lossesOf(model, validation, loss)));
        lp.lambda = std::min(fresh.lambda, lp.lambda_hat - kLambdaGapEpsilon);
      }
    }
    lp = lambda_pair_from_validation(to_value_set(lossesOf(model, validation, loss)));
    const Eigen::VectorXd train_losses = lossesOf(model, train, loss);
    const double objective = truncatedObjective(train_losses, lp) + l2_penalty(model, config.C);
    check_finite(model, objective, t);
    report.objective_trace.push_back(objective);
    report.lambdas.push_back(lp);
  }
  report.model = model;
  report.wall_ms = elapsed_ms(start);
  return report;
}

}  // namespace sorr
