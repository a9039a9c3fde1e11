#pragma once

#include <cstdint>
#include <functional>
#include <random>

#include "sorr/ranked.hpp"

namespace sorr {

// Interval risk levels nu > mu and the support [a, b] of the loss law.
struct RiskLevelPair {
  double nu = 1.0;
  double mu = 0.0;
  double a = 0.0;
  double b = 1.0;

  void validate() const;
};

// inf_lambda { lambda + (1/(n alpha)) sum_i [s_i - lambda]_+ }, 0 < alpha <= 1.
// Integral n*alpha uses the top-k mean; otherwise the piecewise-linear
// objective is minimized exactly over its breakpoints (the data values).
double empirical_cvar(const ValueSet& s, double alpha);

// nu * C_nu - mu * C_mu.  Levels whose ranks n*nu, n*mu are not integral are
// snapped to the nearest rank (with a warning).
double empirical_icvar(const ValueSet& s, const RiskLevelPair& levels);

struct BoundedSampler {
  double a = 0.0;
  double b = 1.0;
  std::function<double(std::mt19937_64&)> draw;
};

BoundedSampler uniform_sampler(double a, double b);

struct BoundCheckResult {
  double upper_violation_rate = 0.0;
  double lower_violation_rate = 0.0;
  double population_icvar = 0.0;  // reference-sample proxy
  double upper_epsilon = 0.0;
  double lower_epsilon = 0.0;
  double mean_estimate = 0.0;  // average of the per-trial estimates
};

inline constexpr std::size_t kReferenceSampleSize = 1'000'000;
inline constexpr int kMinBoundTrials = 100;

// Monte Carlo check of the finite-sample deviation bounds for the ranked-range
// estimate psi_{m,k}/n of the interval CVaR with nu = k/n, mu = m/n.  Trial t
// draws n points with seed + t; the population value comes from a reference
// sample of kReferenceSampleSize points.
BoundCheckResult cvar_bound_check(const BoundedSampler& sampler, std::size_t n,
                                  const RankedRange& r, double delta, int trials,
                                  std::uint64_t seed,
                                  std::size_t reference_size = kReferenceSampleSize);

}  // namespace sorr
