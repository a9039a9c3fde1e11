#pragma once

// Helpers shared by the trainer translation units.  Not part of the stable API.

#include <chrono>
#include <random>
#include <vector>

#include "sorr/optim.hpp"

namespace sorr::detail {

LinearModel initial_model(const Dataset& data, const LossSpec& loss,
                          const TrainConfig& config);

// `batch` row indices drawn uniformly with replacement.
std::vector<std::size_t> sample_batch(std::mt19937_64& rng, std::size_t n,
                                      std::size_t batch);

// Throws NumericError when the objective or the parameters are not finite.
void check_finite(const LinearModel& model, double objective, long epoch);

void add_scaled(ModelGradient& into, const ModelGradient& g, double scale);

long long elapsed_ms(std::chrono::steady_clock::time_point start);

// Per-row sum of the q largest per-label hinges and its score subgradient.
SampleLosses label_top_sum(const LinearModel& model, const Dataset& data, int q,
                           const std::vector<std::size_t>& rows);

}  // namespace sorr::detail
