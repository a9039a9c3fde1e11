#pragma once

#include <Eigen/Core>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace sorr {

struct ModelMeta {
  std::string loss_kind = "logistic";
  std::size_t k = 0;
  std::size_t m = 0;
  int kprime = 0;
};

// Linear hypothesis f(x) = W x (+ b) with W of shape l x d.  Binary models
// use l = 1 and decide by the sign of the single score.
struct LinearModel {
  Eigen::MatrixXd weights;
  std::optional<Eigen::VectorXd> bias;
  ModelMeta meta;

  LinearModel() = default;
  LinearModel(int l, int d, bool with_bias);

  int outputs() const { return static_cast<int>(weights.rows()); }
  int dim() const { return static_cast<int>(weights.cols()); }
  bool has_bias() const { return bias.has_value(); }

  // Throws ShapeError/ParameterError on inconsistent or non-finite fields.
  void validate() const;

  bool operator==(const LinearModel& other) const;
};

// Gradient with the same layout as a model (bias empty when unused).
struct ModelGradient {
  Eigen::MatrixXd weights;
  Eigen::VectorXd bias;

  static ModelGradient zeros_like(const LinearModel& model);
};

Eigen::VectorXd predict_scores(const LinearModel& model,
                               const Eigen::Ref<const Eigen::VectorXd>& x);

// Scores for every row of X (n x d) -> n x l.
Eigen::MatrixXd predict_scores_batch(const LinearModel& model,
                                     const Eigen::Ref<const Eigen::MatrixXd>& X);

struct RegularizedValue {
  double value = 0.0;
  ModelGradient grad;
};

// value + ||W||^2 / (2C), grad + W / C; the bias is not regularized.
RegularizedValue regularized_objective_grad(const LinearModel& model,
                                            double base_value,
                                            const ModelGradient& base_grad,
                                            double C);

double l2_penalty(const LinearModel& model, double C);

// Text format:  key = value  lines; weights row-major, 17 significant digits.
void write_model(const LinearModel& model, std::ostream& out);
LinearModel read_model(std::istream& in);
void save_model(const LinearModel& model, const std::filesystem::path& path);
LinearModel load_model(const std::filesystem::path& path);

inline constexpr int kModelFormatVersion = 1;

}  // namespace sorr
