#include "sorr/losses.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "sorr/errors.hpp"

namespace sorr {

namespace {

inline double positivePart(double x) { return x > 0.0 ? x : 0.0; }

// log(1 + e^z) without overflow.
inline double softplus(double z) {
  return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

// 1 / (1 + e^{-z}) without overflow.
inline double sigmoid(double z) {
  if (z >= 0.0) {
    return 1.0 / (1.0 + std::exp(-z));
  }
  const double e = std::exp(z);
  return e / (1.0 + e);
}

void checkScores(std::span<const double> scores) {
  if (scores.empty()) {
    throw ShapeError("score vector is empty");
  }
}

}  // namespace

LossValue margin_loss(MarginLossKind kind, double t) {
  switch (kind) {
    case MarginLossKind::logistic:
      return {softplus(-t) / std::numbers::ln2, -sigmoid(-t) / std::numbers::ln2};
    case MarginLossKind::hinge:
      return {positivePart(1.0 - t), t < 1.0 ? -1.0 : 0.0};
  }
  return {};
}

LabelSet::LabelSet(std::vector<int> labels) : labels_(std::move(labels)) {
  std::sort(labels_.begin(), labels_.end());
  labels_.erase(std::unique(labels_.begin(), labels_.end()), labels_.end());
}

void LabelSet::validate(int l) const {
  if (labels_.empty()) {
    throw ParameterError("label set is empty");
  }
  if (labels_.front() < 0 || labels_.back() >= l) {
    throw RangeError("label set holds a label outside 0.." +
                     std::to_string(l - 1));
  }
  if (static_cast<int>(labels_.size()) >= l) {
    throw ParameterError("label set must be a proper subset of the " +
                         std::to_string(l) + " labels");
  }
}

bool LabelSet::contains(int label) const {
  return std::binary_search(labels_.begin(), labels_.end(), label);
}

VectorLoss softmax_loss_grad(std::span<const double> scores, int y) {
  checkScores(scores);
  const int l = static_cast<int>(scores.size());
  if (y < 0 || y >= l) {
    throw RangeError("class " + std::to_string(y) + " outside 0.." +
                     std::to_string(l - 1));
  }
  const double top = *std::max_element(scores.begin(), scores.end());
  VectorLoss out;
  out.coeff.resize(l);
  double z = 0.0;
  for (int j = 0; j < l; ++j) {
    out.coeff[j] = std::exp(scores[j] - top);
    z += out.coeff[j];
  }
  out.coeff /= z;
  out.value = std::log(z) - (scores[y] - top);
  out.coeff[y] -= 1.0;
  return out;
}

std::vector<double> tkml_label_hinges(std::span<const double> scores,
                                      const LabelSet& Y) {
  checkScores(scores);
  Y.validate(static_cast<int>(scores.size()));
  double worst = scores[Y.labels().front()];
  for (int y : Y.labels()) {
    worst = std::min(worst, scores[y]);
  }
  std::vector<double> h(scores.size());
  for (std::size_t j = 0; j < scores.size(); ++j) {
    h[j] = positivePart(1.0 + scores[j] - worst);
  }
  return h;
}

VectorLoss tkml_loss_subgrad(std::span<const double> scores, const LabelSet& Y,
                             int kprime) {
  const int l = static_cast<int>(scores.size());
  if (kprime < 1 || kprime >= l) {
    throw RangeError("k'=" + std::to_string(kprime) + " outside 1.." +
                     std::to_string(l - 1));
  }
  const std::vector<double> h = tkml_label_hinges(scores, Y);
  std::vector<std::size_t> order(h.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::nth_element(order.begin(), order.begin() + kprime, order.end(),
                   [&h](std::size_t a, std::size_t b) {
                     return h[a] != h[b] ? h[a] > h[b] : a < b;
                   });
  const int ranked = static_cast<int>(order[kprime]);
  int worst = Y.labels().front();
  for (int y : Y.labels()) {
    if (scores[y] < scores[worst]) {
      worst = y;
    }
  }
  VectorLoss out;
  out.value = h[ranked];
  out.coeff = Eigen::VectorXd::Zero(l);
  if (out.value > 0.0) {
    out.coeff[ranked] += 1.0;
    out.coeff[worst] -= 1.0;
  }
  return out;
}

double conventional_multilabel_loss(std::span<const double> scores,
                                    const LabelSet& Y) {
  checkScores(scores);
  Y.validate(static_cast<int>(scores.size()));
  double worst_true = std::numeric_limits<double>::infinity();
  double best_wrong = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < scores.size(); ++j) {
    if (Y.contains(static_cast<int>(j))) {
      worst_true = std::min(worst_true, scores[j]);
    } else {
      best_wrong = std::max(best_wrong, scores[j]);
    }
  }
  return positivePart(1.0 + best_wrong - worst_true);
}

VectorLoss multilabel_logistic_loss(std::span<const double> scores,
                                    const LabelSet& Y) {
  checkScores(scores);
  Y.validate(static_cast<int>(scores.size()));
  VectorLoss out;
  out.coeff.resize(static_cast<Eigen::Index>(scores.size()));
  for (std::size_t j = 0; j < scores.size(); ++j) {
    const double target = Y.contains(static_cast<int>(j)) ? 1.0 : 0.0;
    const double f = scores[j];
    out.value += target > 0.0 ? softplus(-f) : softplus(f);
    out.coeff[static_cast<Eigen::Index>(j)] = sigmoid(f) - target;
  }
  return out;
}

double tkml_aorr_objective(const ValueSet& losses, double lambda,
                           double lambda_hat, const RankedRange& r) {
  const std::size_t n = losses.size();
  r.validate(n);
  const double width = static_cast<double>(r.width());
  long double acc = 0.0L;
  for (double s : losses.values()) {
    acc += positivePart(lambda_hat - positivePart(s - lambda));
  }
  return lambda + (static_cast<double>(n - r.m) / width) * lambda_hat -
         static_cast<double>(acc) / width;
}

std::string to_string(LossKind kind) {
  switch (kind) {
    case LossKind::logistic:
      return "logistic";
    case LossKind::hinge:
      return "hinge";
    case LossKind::softmax:
      return "softmax";
    case LossKind::tkml:
      return "tkml";
    case LossKind::multilabel_logistic:
      return "multilabel_logistic";
  }
  return "unknown";
}

LossKind loss_kind_from_string(const std::string& name) {
  for (LossKind k : {LossKind::logistic, LossKind::hinge, LossKind::softmax,
                     LossKind::tkml, LossKind::multilabel_logistic}) {
    if (to_string(k) == name) {
      return k;
    }
  }
  throw ParameterError("unknown loss kind '" + name + "'");
}

bool is_margin_loss(LossKind kind) {
  return kind == LossKind::logistic || kind == LossKind::hinge;
}

bool is_multilabel_loss(LossKind kind) {
  return kind == LossKind::tkml || kind == LossKind::multilabel_logistic;
}

int model_outputs(LossKind kind, int l) { return is_margin_loss(kind) ? 1 : l; }

}  // namespace sorr
