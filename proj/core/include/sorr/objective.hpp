#pragma once

// Per-sample loss evaluation for a linear model and the aggregate objectives
// built on top of it.

#include <Eigen/Core>
#include <vector>

#include "sorr/dataset.hpp"
#include "sorr/losses.hpp"
#include "sorr/model.hpp"
#include "sorr/ranked.hpp"

namespace sorr {

struct SampleLosses {
  Eigen::VectorXd values;  // one individual loss per evaluated row
  Eigen::MatrixXd coeffs;  // rows x outputs, d loss / d score (if requested)
};

// Individual losses of `rows` (all rows when empty).  Gradients of sample i
// with respect to the weights are coeffs.row(i)^T x_i^T.
SampleLosses evaluate_losses(const LinearModel& model, const Dataset& data,
                             const LossSpec& loss, bool with_coeffs,
                             const std::vector<std::size_t>& rows = {});

// sum_i w_i * grad s_i over `rows` (all rows when empty); `weights` and
// `losses` are aligned with `rows`.
ModelGradient weighted_gradient(const LinearModel& model, const Dataset& data,
                                const SampleLosses& losses,
                                const Eigen::VectorXd& weights,
                                const std::vector<std::size_t>& rows = {});

// Threshold whose strict exceedance set is exactly the top-m losses
// (s_[m+1]; +infinity when m = 0).  Any value in [s_[m+1], s_[m]) minimizes
// the variational form of the top-m sum; the lower endpoint makes the strict
// indicator select all m leading samples.
double phi_threshold(const Eigen::VectorXd& losses, std::size_t m);

// (1/n) psi_{m,k}(S(theta)) + ||W||^2 / (2C).
double sorr_objective(const LinearModel& model, const Dataset& data,
                      const LossSpec& loss, const RankedRange& r, double C);

// Mean individual loss + ||W||^2 / (2C).
double average_objective(const LinearModel& model, const Dataset& data,
                         const LossSpec& loss, double C);

ValueSet to_value_set(const Eigen::VectorXd& v);

// theta <- theta - eta * g
void apply_step(LinearModel& model, const ModelGradient& g, double eta);

// <a, b> over weights and bias.
double inner_product(const ModelGradient& a, const LinearModel& b);

bool all_finite(const LinearModel& model);

}  // namespace sorr
