#pragma once

// Individual losses.  Label indices are 0-based throughout the API; the
// on-disk formats use 1-based labels and are translated by the loaders.

#include <Eigen/Core>
#include <span>
#include <string>
#include <vector>

#include "sorr/ranked.hpp"

namespace sorr {

enum class MarginLossKind { logistic, hinge };

struct LossValue {
  double value = 0.0;
  double derivative = 0.0;
};

// logistic: log2(1 + e^{-t});  hinge: [1 - t]_+ (subderivative 0 at t = 1).
LossValue margin_loss(MarginLossKind kind, double t);

// Non-empty proper subset of {0, .., l-1}, stored sorted and deduplicated.
class LabelSet {
 public:
  LabelSet() = default;
  explicit LabelSet(std::vector<int> labels);

  // Throws RangeError/ParameterError unless the set is a non-empty proper
  // subset of {0, .., l-1}.
  void validate(int l) const;

  const std::vector<int>& labels() const { return labels_; }
  std::size_t size() const { return labels_.size(); }
  bool contains(int label) const;
  bool operator==(const LabelSet& other) const = default;

 private:
  std::vector<int> labels_;
};

struct VectorLoss {
  double value = 0.0;
  // d value / d score_j for each of the l scores (multiply by x for the
  // weight gradient).
  Eigen::VectorXd coeff;
};

// Cross-entropy with natural log: -log softmax(scores)_y.
VectorLoss softmax_loss_grad(std::span<const double> scores, int y);

// Per-label hinges h_j = [1 + f_j - min_{y in Y} f_y]_+, value h_[k'+1].
// Subgradient: +1 on the label holding rank k'+1, -1 on the worst true label
// (zero vector when the value is 0).  Ties go to the lowest label index.
VectorLoss tkml_loss_subgrad(std::span<const double> scores, const LabelSet& Y,
                             int kprime);

// The per-label hinge set that the top-k multi-label loss ranks.
std::vector<double> tkml_label_hinges(std::span<const double> scores,
                                      const LabelSet& Y);

// [1 + max_{j not in Y} f_j - min_{y in Y} f_y]_+.
double conventional_multilabel_loss(std::span<const double> scores,
                                    const LabelSet& Y);

// Sum over labels of the binary logistic loss (natural log) with targets
// 1{j in Y}; the one-vs-all baseline for multi-label data.
VectorLoss multilabel_logistic_loss(std::span<const double> scores,
                                    const LabelSet& Y);

// lambda + ((n-m)/(k-m)) lambda_hat - (1/(k-m)) sum_i [lambda_hat - [s_i - lambda]_+]_+
double tkml_aorr_objective(const ValueSet& losses, double lambda,
                           double lambda_hat, const RankedRange& r);

// ---------------------------------------------------------------------------
// Loss specifications used by the trainers.

enum class LossKind { logistic, hinge, softmax, tkml, multilabel_logistic };

struct LossSpec {
  LossKind kind = LossKind::logistic;
  int kprime = 1;  // only used by LossKind::tkml
};

std::string to_string(LossKind kind);
LossKind loss_kind_from_string(const std::string& name);

// True when the loss acts on a single signed margin (binary tasks).
bool is_margin_loss(LossKind kind);
bool is_multilabel_loss(LossKind kind);

// Number of model outputs the loss needs for l classes/labels.
int model_outputs(LossKind kind, int l);

}  // namespace sorr
