#include <algorithm>
#include <chrono>
#include <numeric>

#include "sorr/errors.hpp"
#include "sorr/optim.hpp"
#include "sorr/train_internal.hpp"

namespace sorr {

using namespace detail;

namespace {

struct SaddleState {
  double lambda = 0.0;
  double lambda_hat = 0.0;
};

// One simultaneous update on the rows in `rows` (all rows when empty).
void saddleStep(LinearModel& model, SaddleState& st, const Dataset& data,
                const LossSpec& loss, const TrainConfig& cfg,
                const std::vector<std::size_t>& rows) {
  const double n = static_cast<double>(data.size());
  const double width = static_cast<double>(cfg.r.width());
  const SampleLosses s = evaluate_losses(model, data, loss, true, rows);
  const double scale = n / static_cast<double>(s.values.size());
  const Eigen::ArrayXd excess = (s.values.array() - st.lambda).max(0.0);
  const Eigen::ArrayXd inside = (st.lambda_hat > excess).cast<double>();
  const Eigen::ArrayXd above = (s.values.array() > st.lambda).cast<double>();
  const Eigen::VectorXd both = (inside * above).matrix();

  ModelGradient g = weighted_gradient(model, data, s, both * (scale / width), rows);
  g.weights += model.weights / cfg.C;
  const double lambda_grad = 1.0 - scale * both.sum() / width;
  const double lambda_hat_grad =
      (n - static_cast<double>(cfg.r.m)) / width - scale * inside.sum() / width;
  apply_step(model, g, cfg.eta_inner);
  st.lambda -= cfg.eta_inner * lambda_grad;
  st.lambda_hat += cfg.eta_inner * lambda_hat_grad;
}

}  // namespace

TrainReport tkml_aorr_train(const Dataset& data, const TrainConfig& config) {
  config.validate();
  data.validate();
  if (!data.multilabel()) {
    throw ParameterError("the combined multi-label trainer needs label sets");
  }
  config.r.validate(data.size());
  if (config.kprime < 1 || config.kprime >= data.l) {
    throw RangeError("k'=" + std::to_string(config.kprime) + " outside 1.." +
                     std::to_string(data.l - 1));
  }
  const auto start = std::chrono::steady_clock::now();
  const LossSpec loss{LossKind::tkml, config.kprime};
  std::mt19937_64 rng(config.seed);
  TrainReport report;
  report.seed = config.seed;
  LinearModel model = initial_model(data, loss, config);
  SaddleState st;
  auto objective = [&]() {
    const SampleLosses s = evaluate_losses(model, data, loss, false);
    return tkml_aorr_objective(to_value_set(s.values), st.lambda, st.lambda_hat,
                               config.r) +
           l2_penalty(model, config.C);
  };
  report.initial_objective = objective();

  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (int epoch = 0; epoch < config.outer_epochs; ++epoch) {
    if (config.batch == 0 || config.batch >= data.size()) {
      saddleStep(model, st, data, loss, config, {});
    } else {
      std::shuffle(order.begin(), order.end(), rng);
      for (std::size_t b = 0; b < order.size(); b += config.batch) {
        const std::size_t e = std::min(order.size(), b + config.batch);
        const std::vector<std::size_t> rows(order.begin() + static_cast<long>(b),
                                            order.begin() + static_cast<long>(e));
        saddleStep(model, st, data, loss, config, rows);
      }
    }
    const double value = objective();
    check_finite(model, value, epoch);
    report.objective_trace.push_back(value);
    report.lambdas.push_back({st.lambda, st.lambda_hat});
  }
  report.model = model;
  report.wall_ms = elapsed_ms(start);
  return report;
}

}  // namespace sorr
