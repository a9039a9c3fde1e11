#include "sorr/optim.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "sorr/errors.hpp"
#include "sorr/train_internal.hpp"

namespace sorr {

void TrainConfig::validate() const {
  if (!(eta_outer > 0.0) || !(eta_inner > 0.0)) {
    throw ParameterError("learning rates must be positive");
  }
  if (!(C > 0.0)) {
    throw ParameterError("C must be positive");
  }
  if (outer_epochs < 1 || inner_epochs < 1 || warmup_epochs < 1) {
    throw ParameterError("epoch counts must be at least 1");
  }
  if (patience < 1) {
    throw ParameterError("patience must be at least 1");
  }
  if (refresh_every < 1) {
    throw ParameterError("refresh_every must be at least 1");
  }
  if (r.k <= r.m) {
    throw RangeError("ranked range needs m < k");
  }
}

namespace detail {

LinearModel initial_model(const Dataset& data, const LossSpec& loss,
                          const TrainConfig& config) {
  LinearModel model(model_outputs(loss.kind, data.l), data.dim(), config.bias);
  model.meta.loss_kind = to_string(loss.kind);
  model.meta.k = config.r.k;
  model.meta.m = config.r.m;
  model.meta.kprime = loss.kind == LossKind::tkml ? loss.kprime : 0;
  if (config.init_scale > 0.0) {
    std::mt19937_64 rng(config.seed ^ 0x243f6a8885a308d3ULL);
    std::normal_distribution<double> draw(0.0, config.init_scale);
    for (Eigen::Index i = 0; i < model.weights.size(); ++i) {
      model.weights.data()[i] = draw(rng);
    }
  }
  return model;
}

std::vector<std::size_t> sample_batch(std::mt19937_64& rng, std::size_t n,
                                      std::size_t batch) {
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::vector<std::size_t> rows(batch);
  for (std::size_t& r : rows) {
    r = pick(rng);
  }
  return rows;
}

void check_finite(const LinearModel& model, double objective, long epoch) {
  if (!std::isfinite(objective) || !all_finite(model)) {
    throw NumericError("training diverged: objective is not finite", epoch);
  }
}


void add_scaled(ModelGradient& into, const ModelGradient& g, double scale) {
  into.weights += scale * g.weights;
  if (into.bias.size() == g.bias.size()) {
    into.bias += scale * g.bias;
  }
}

long long elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::steady_clock::now() - start)
      .count();
}

SampleLosses label_top_sum(const LinearModel& model, const Dataset& data,
                           int q, const std::vector<std::size_t>& rows) {
  const bool all = rows.empty();
  const Eigen::Index count = all ? static_cast<Eigen::Index>(data.size())
                                 : static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXd scores;
  if (all) {
    scores = predict_scores_batch(model, data.features);
  } else {
    std::vector<Eigen::Index> idx(rows.begin(), rows.end());
    scores = predict_scores_batch(model, data.features(idx, Eigen::all));
  }
  const int l = static_cast<int>(scores.cols());
  SampleLosses out;
  out.values = Eigen::VectorXd::Zero(count);
  out.coeffs = Eigen::MatrixXd::Zero(count, l);
  if (q == 0) {
    return out;
  }
  std::vector<double> f(static_cast<std::size_t>(l));
  std::vector<std::size_t> order(static_cast<std::size_t>(l));
  for (Eigen::Index r = 0; r < count; ++r) {
    const std::size_t i = all ? static_cast<std::size_t>(r) : rows[static_cast<std::size_t>(r)];
    for (int j = 0; j < l; ++j) {
      f[static_cast<std::size_t>(j)] = scores(r, j);
    }
    const LabelSet& Y = data.label_sets[i];
    const std::vector<double> h = tkml_label_hinges(f, Y);
    int worst = Y.labels().front();
    for (int y : Y.labels()) {
      if (f[static_cast<std::size_t>(y)] < f[static_cast<std::size_t>(worst)]) {
        worst = y;
      }
    }
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::partial_sort(order.begin(), order.begin() + q, order.end(),
                      [&h](std::size_t a, std::size_t b) {
                        return h[a] != h[b] ? h[a] > h[b] : a < b;
                      });
    double total = 0.0;
    for (int t = 0; t < q; ++t) {
      const std::size_t j = order[static_cast<std::size_t>(t)];
      total += h[j];
      if (h[j] > 0.0) {
        out.coeffs(r, static_cast<Eigen::Index>(j)) += 1.0;
        out.coeffs(r, worst) -= 1.0;
      }
    }
    out.values[r] = total;
  }
  return out;
}

}  // namespace detail

using namespace detail;

ModelGradient phi_subgradient(const LinearModel& model, const Dataset& data,
                              const LossSpec& loss, double threshold) {
  if (std::isnan(threshold)) {
    throw ParameterError("threshold must not be NaN");
  }
  const SampleLosses s = evaluate_losses(model, data, loss, true);
  const Eigen::VectorXd w = (s.values.array() > threshold).cast<double>();
  return weighted_gradient(model, data, s, w);
}

namespace {

// Sample-level ranked-range DCA.
TrainReport dcaSamples(const Dataset& data, const LossSpec& loss,
                       const TrainConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  const std::size_t n = data.size();
  const double nd = static_cast<double>(n);
  const double k_frac = static_cast<double>(cfg.r.k) / nd;
  std::mt19937_64 rng(cfg.seed);

  TrainReport report;
  report.seed = cfg.seed;
  LinearModel model = initial_model(data, loss, cfg);
  report.initial_objective = sorr_objective(model, data, loss, cfg.r, cfg.C);

  // The threshold variable persists across outer rounds.
  double lambda = 0.0;
  for (int t = 0; t < cfg.outer_epochs; ++t) {
    // Linearize (1/n) phi_m at the current iterate.
    ModelGradient theta_hat = ModelGradient::zeros_like(model);
    if (cfg.r.m > 0) {
      // The exact top-m set (ties broken by index) always yields a valid
      // subgradient; it agrees with the strict threshold at s_[m+1] whenever
      // s_[m] > s_[m+1].
      const SampleLosses s = evaluate_losses(model, data, loss, true);
      const std::vector<std::size_t> order =
          rank_order(std::span<const double>(s.values.data(), n));
      Eigen::VectorXd w = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
      for (std::size_t j = 0; j < cfg.r.m; ++j) {
        w(static_cast<Eigen::Index>(order[j])) = 1.0 / nd;
      }
      theta_hat = weighted_gradient(model, data, s, w);
    }
    LinearModel best = model;
    double best_value = std::numeric_limits<double>::infinity();
    // Exact convex subproblem: (1/n) phi_k + R - <theta_hat, theta>.
    auto subproblem = [&](const LinearModel& m, const Eigen::VectorXd& losses) {
      return top_k_sum(to_value_set(losses), cfg.r.k) / nd + l2_penalty(m, cfg.C) -
             inner_product(theta_hat, m);
    };

    for (int step = 0; step < cfg.inner_epochs; ++step) {
      std::vector<std::size_t> rows;
      if (cfg.batch > 0) {
        rows = sample_batch(rng, n, cfg.batch);
      }
      const SampleLosses s = evaluate_losses(model, data, loss, true, rows);
      const double count_scale = 1.0 / static_cast<double>(s.values.size());
      const Eigen::VectorXd active = (s.values.array() > lambda).cast<double>();
      if (cfg.batch == 0) {
        const double value = subproblem(model, s.values);
        if (!std::isfinite(value)) {
          throw NumericError("inner objective is not finite", t);
        }
        if (value < best_value) {
          best_value = value;
          best = model;
        }
      }
      ModelGradient g =
          weighted_gradient(model, data, s, active * count_scale, rows);
      add_scaled(g, theta_hat, -1.0);
      g.weights += model.weights / cfg.C;
      const double lambda_grad = k_frac - active.sum() * count_scale;
      apply_step(model, g, cfg.eta_inner);
      lambda -= cfg.eta_inner * lambda_grad;
    }
    if (cfg.batch == 0 && cfg.keep_best) {
      const SampleLosses s = evaluate_losses(model, data, loss, false);
      if (subproblem(model, s.values) < best_value) {
        best = model;
      }
      model = best;
    }
    const double objective = sorr_objective(model, data, loss, cfg.r, cfg.C);
    check_finite(model, objective, t);
    report.objective_trace.push_back(objective);
    const SampleLosses s = evaluate_losses(model, data, loss, false);
    const ValueSet vs = to_value_set(s.values);
    LambdaPair lp;
    lp.lambda = cfg.batch == 0 ? kth_largest(vs, cfg.r.k) : lambda;
    lp.lambda_hat = cfg.r.m > 0 ? kth_largest(vs, cfg.r.m)
                                : std::numeric_limits<double>::infinity();
    report.lambdas.push_back(lp);
  }
  report.model = model;
  report.wall_ms = elapsed_ms(start);
  return report;
}

double tkmlAverageObjective(const LinearModel& model, const Dataset& data,
                            const LossSpec& loss, double C) {
  return average_objective(model, data, loss, C);
}

// Label-level DCA for the average top-k multi-label loss.
TrainReport dcaLabels(const Dataset& data, const LossSpec& loss,
                      const TrainConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  const std::size_t n = data.size();
  const double nd = static_cast<double>(n);
  std::mt19937_64 rng(cfg.seed);
  TrainReport report;
  report.seed = cfg.seed;
  LinearModel model = initial_model(data, loss, cfg);
  report.initial_objective = tkmlAverageObjective(model, data, loss, cfg.C);

  for (int t = 0; t < cfg.outer_epochs; ++t) {
    const SampleLosses h = label_top_sum(model, data, loss.kprime, {});
    const ModelGradient theta_hat = weighted_gradient(
        model, data, h, Eigen::VectorXd::Constant(static_cast<Eigen::Index>(n), 1.0 / nd));
    LinearModel best = model;
    double best_value = std::numeric_limits<double>::infinity();
    for (int step = 0; step < cfg.inner_epochs; ++step) {
      std::vector<std::size_t> rows;
      if (cfg.batch > 0) {
        rows = sample_batch(rng, n, cfg.batch);
      }
      const SampleLosses g_part = label_top_sum(model, data, loss.kprime + 1, rows);
      const double scale = 1.0 / static_cast<double>(g_part.values.size());
      if (cfg.batch == 0) {
        const double value = g_part.values.mean() + l2_penalty(model, cfg.C) -
                             inner_product(theta_hat, model);
        if (value < best_value) {
          best_value = value;
          best = model;
        }
      }
      ModelGradient g = weighted_gradient(
          model, data, g_part,
          Eigen::VectorXd::Constant(g_part.values.size(), scale), rows);
      add_scaled(g, theta_hat, -1.0);
      g.weights += model.weights / cfg.C;
      apply_step(model, g, cfg.eta_inner);
    }
    if (cfg.batch == 0 && cfg.keep_best) {
      const SampleLosses g_part = label_top_sum(model, data, loss.kprime + 1, {});
      const double value = g_part.values.mean() + l2_penalty(model, cfg.C) -
                           inner_product(theta_hat, model);
      if (value >= best_value) {
        model = best;
      }
    }
    const double objective = tkmlAverageObjective(model, data, loss, cfg.C);
    check_finite(model, objective, t);
    report.objective_trace.push_back(objective);
    report.lambdas.push_back({});
  }
  report.model = model;
  report.wall_ms = elapsed_ms(start);
  return report;
}

}  // namespace

TrainReport dca_train(const Dataset& data, const LossSpec& loss,
                      const TrainConfig& config) {
  config.validate();
  data.validate();
  if (loss.kind == LossKind::tkml) {
    if (config.r.m != 0 || config.r.k != data.size()) {
      throw RangeError(
          "the label-level split averages over all samples; use r = (0, n) "
          "or the combined multi-label trainer");
    }
    if (loss.kprime < 1 || loss.kprime >= data.l) {
      throw RangeError("k' must lie in 1.." + std::to_string(data.l - 1));
    }
    return dcaLabels(data, loss, config);
  }
  config.r.validate(data.size());
  return dcaSamples(data, loss, config);
}

LambdaPair lambda_pair_from_validation(const ValueSet& validation_losses) {
  const std::size_t n = validation_losses.size();
  if (n == 0) {
    throw ParameterError("validation losses are empty");
  }
  long double sum = 0.0L;
  for (double v : validation_losses.values()) {
    sum += v;
  }
  const double mean = static_cast<double>(sum / n);
  long double sq = 0.0L;
  for (double v : validation_losses.values()) {
    sq += (v - mean) * (v - mean);
  }
  const double sd = std::sqrt(static_cast<double>(sq / n));
  LambdaPair out;
  out.lambda_hat = mean + sd;
  out.lambda = mean - 2.0 * sd;
  if (!(out.lambda_hat > out.lambda)) {
    out.lambda = out.lambda_hat - kLambdaGapEpsilon;
  }
  return out;
}

std::size_t estimate_noise_count(const ValueSet& train_losses, double lambda_hat) {
  std::size_t count = 0;
  for (double v : train_losses.values()) {
    count += v > lambda_hat;
  }
  return count;
}

std::size_t adaptive_k(double train_accuracy, std::size_t n) {
  if (!(train_accuracy >= 0.0 && train_accuracy <= 1.0)) {
    throw RangeError("training accuracy must lie in [0, 1]");
  }
  std::size_t divisor = 1;
  if (train_accuracy >= 0.995) {
    divisor = 32;
  } else if (train_accuracy >= 0.95) {
    divisor = 16;
  } else if (train_accuracy >= 0.90) {
    divisor = 8;
  } else if (train_accuracy >= 0.80) {
    divisor = 4;
  } else if (train_accuracy >= 0.70) {
    divisor = 2;
  }
  return std::max<std::size_t>(1, n / divisor);
}

RankedRange minibatch_preset(MinibatchPreset preset, std::size_t batch,
                             std::size_t k) {
  if (batch < 1) {
    throw RangeError("mini-batch size must be at least 1");
  }
  switch (preset) {
    case MinibatchPreset::osgd:
      return {0, k};
    case MinibatchPreset::itlm:
      if (k < 1 || k > batch) {
        throw RangeError("kept-sample count must lie in 1..batch");
      }
      return {batch - k, batch};
    case MinibatchPreset::mkl_sgd:
      return {batch - 1, batch};
  }
  return {0, batch};
}

TrainReport sgd_average_train(const Dataset& data, const LossSpec& loss,
                              const TrainConfig& config) {
  config.validate();
  data.validate();
  const auto start = std::chrono::steady_clock::now();
  const std::size_t n = data.size();
  std::mt19937_64 rng(config.seed);
  TrainReport report;
  report.seed = config.seed;
  LinearModel model = initial_model(data, loss, config);
  model.meta.k = n;
  model.meta.m = 0;
  report.initial_objective = average_objective(model, data, loss, config.C);
  for (int t = 0; t < config.outer_epochs; ++t) {
    for (int step = 0; step < config.inner_epochs; ++step) {
      std::vector<std::size_t> rows;
      if (config.batch > 0) {
        rows = sample_batch(rng, n, config.batch);
      }
      const SampleLosses s = evaluate_losses(model, data, loss, true, rows);
      ModelGradient g = weighted_gradient(
          model, data, s,
          Eigen::VectorXd::Constant(s.values.size(),
                                    1.0 / static_cast<double>(s.values.size())),
          rows);
      g.weights += model.weights / config.C;
      apply_step(model, g, config.eta_inner);
    }
    const double objective = average_objective(model, data, loss, config.C);
    check_finite(model, objective, t);
    report.objective_trace.push_back(objective);
    report.lambdas.push_back({});
  }
  report.model = model;
  report.wall_ms = elapsed_ms(start);
  return report;
}

}  // namespace sorr
