#include "sorr/objective.hpp"

#include <algorithm>
#include <limits>

#include "sorr/errors.hpp"

namespace sorr {

namespace {

void checkCompatible(const LinearModel& model, const Dataset& data,
                     const LossSpec& loss) {
  if (model.dim() != data.dim()) {
    throw ShapeError("model expects " + std::to_string(model.dim()) +
                     " features, data has " + std::to_string(data.dim()));
  }
  if (model.outputs() != model_outputs(loss.kind, data.l)) {
    throw ShapeError("model has " + std::to_string(model.outputs()) +
                     " outputs, loss " + to_string(loss.kind) + " needs " +
                     std::to_string(model_outputs(loss.kind, data.l)));
  }
  if (is_multilabel_loss(loss.kind) != data.multilabel()) {
    throw ParameterError("loss " + to_string(loss.kind) +
                         " does not match the dataset's label type");
  }
  if (is_margin_loss(loss.kind) && !data.binary()) {
    throw ParameterError("margin losses need a binary dataset");
  }
}

}  // namespace

SampleLosses evaluate_losses(const LinearModel& model, const Dataset& data,
                             const LossSpec& loss, bool with_coeffs,
                             const std::vector<std::size_t>& rows) {
  checkCompatible(model, data, loss);
  const bool all = rows.empty();
  const Eigen::Index count =
      all ? static_cast<Eigen::Index>(data.size()) : static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXd scores;
  if (all) {
    scores = predict_scores_batch(model, data.features);
  } else {
    std::vector<Eigen::Index> idx(rows.begin(), rows.end());
    scores = predict_scores_batch(model, data.features(idx, Eigen::all));
  }
  SampleLosses out;
  out.values.resize(count);
  if (with_coeffs) {
    out.coeffs.resize(count, model.outputs());
  }
  const MarginLossKind margin_kind =
      loss.kind == LossKind::hinge ? MarginLossKind::hinge : MarginLossKind::logistic;
  std::vector<double> row_scores(static_cast<std::size_t>(model.outputs()));
  for (Eigen::Index r = 0; r < count; ++r) {
    const std::size_t i = all ? static_cast<std::size_t>(r) : rows[static_cast<std::size_t>(r)];
    if (is_margin_loss(loss.kind)) {
      const double y = data.sign(i);
      const LossValue lv = margin_loss(margin_kind, y * scores(r, 0));
      out.values[r] = lv.value;
      if (with_coeffs) {
        out.coeffs(r, 0) = y * lv.derivative;
      }
      continue;
    }
    for (Eigen::Index j = 0; j < scores.cols(); ++j) {
      row_scores[static_cast<std::size_t>(j)] = scores(r, j);
    }
    VectorLoss vl;
    switch (loss.kind) {
      case LossKind::softmax:
        vl = softmax_loss_grad(row_scores, data.labels[i]);
        break;
      case LossKind::tkml:
        vl = tkml_loss_subgrad(row_scores, data.label_sets[i], loss.kprime);
        break;
      case LossKind::multilabel_logistic:
        vl = multilabel_logistic_loss(row_scores, data.label_sets[i]);
        break;
      default:
        break;
    }
    out.values[r] = vl.value;
    if (with_coeffs) {
      out.coeffs.row(r) = vl.coeff.transpose();
    }
  }
  return out;
}

ModelGradient weighted_gradient(const LinearModel& model, const Dataset& data,
                                const SampleLosses& losses,
                                const Eigen::VectorXd& weights,
                                const std::vector<std::size_t>& rows) {
  if (losses.coeffs.rows() != weights.size()) {
    throw ShapeError("weights do not align with the evaluated samples");
  }
  const Eigen::MatrixXd scaled = losses.coeffs.array().colwise() * weights.array();
  ModelGradient g;
  if (rows.empty()) {
    g.weights = scaled.transpose() * data.features;
  } else {
    std::vector<Eigen::Index> idx(rows.begin(), rows.end());
    g.weights = scaled.transpose() * data.features(idx, Eigen::all);
  }
  if (model.has_bias()) {
    g.bias = scaled.colwise().sum().transpose();
  } else {
    g.bias.resize(0);
  }
  return g;
}

double phi_threshold(const Eigen::VectorXd& losses, std::size_t m) {
  if (m == 0) {
    return std::numeric_limits<double>::infinity();
  }
  if (m >= static_cast<std::size_t>(losses.size())) {
    throw RangeError("m=" + std::to_string(m) + " must be below n=" +
                     std::to_string(losses.size()));
  }
  return kth_largest(to_value_set(losses), m + 1);
}

ValueSet to_value_set(const Eigen::VectorXd& v) {
  return ValueSet(std::vector<double>(v.data(), v.data() + v.size()));
}

double sorr_objective(const LinearModel& model, const Dataset& data,
                      const LossSpec& loss, const RankedRange& r, double C) {
  const SampleLosses s = evaluate_losses(model, data, loss, false);
  return ranked_range_sum(to_value_set(s.values), r) /
             static_cast<double>(data.size()) +
         l2_penalty(model, C);
}

double average_objective(const LinearModel& model, const Dataset& data,
                         const LossSpec& loss, double C) {
  const SampleLosses s = evaluate_losses(model, data, loss, false);
  return s.values.mean() + l2_penalty(model, C);
}

void apply_step(LinearModel& model, const ModelGradient& g, double eta) {
  model.weights.noalias() -= eta * g.weights;
  if (model.bias && g.bias.size() == model.bias->size()) {
    *model.bias -= eta * g.bias;
  }
}

double inner_product(const ModelGradient& a, const LinearModel& b) {
  double v = (a.weights.array() * b.weights.array()).sum();
  if (b.bias && a.bias.size() == b.bias->size()) {
    v += a.bias.dot(*b.bias);
  }
  return v;
}

bool all_finite(const LinearModel& model) {
  return model.weights.allFinite() && (!model.bias || model.bias->allFinite());
}

}  // namespace sorr
