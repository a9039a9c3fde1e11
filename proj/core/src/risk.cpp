#include "sorr/risk.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "sorr/errors.hpp"

namespace sorr {

namespace {

// Nearest integer to x when x is within a relative 1e-9 of it.
bool integralRank(double x, std::size_t& rank) {
  const double r = std::round(x);
  rank = static_cast<std::size_t>(r);
  return std::abs(x - r) <= 1e-9 * std::max(1.0, std::abs(x));
}

}  // namespace

void RiskLevelPair::validate() const {
  if (!(nu > 0.0 && nu <= 1.0)) {
    throw RangeError("nu must lie in (0, 1]");
  }
  if (!(mu >= 0.0 && mu < 1.0)) {
    throw RangeError("mu must lie in [0, 1)");
  }
  if (!(mu < nu)) {
    throw RangeError("risk levels need mu < nu");
  }
  if (!(a < b)) {
    throw ParameterError("support bounds need a < b");
  }
}

double empirical_cvar(const ValueSet& s, double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw RangeError("alpha must lie in (0, 1]");
  }
  const std::size_t n = s.size();
  const double n_alpha = static_cast<double>(n) * alpha;
  std::size_t k = 0;
  if (integralRank(n_alpha, k) && k >= 1) {
    return top_k_sum(s, k) / static_cast<double>(k);
  }
  std::vector<double> sorted = s.values();
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  // At lambda = v_j: sum_i [v_i - v_j]_+ = prefix_j - j * v_j.
  double best = std::numeric_limits<double>::infinity();
  long double prefix = 0.0L;
  for (std::size_t j = 0; j < n; ++j) {
    prefix += sorted[j];
    const long double excess = prefix - static_cast<long double>(j + 1) * sorted[j];
    const double value = sorted[j] + static_cast<double>(excess / n_alpha);
    best = std::min(best, value);
  }
  return best;
}

double empirical_icvar(const ValueSet& s, const RiskLevelPair& levels) {
  RiskLevelPair lv = levels;
  if (!(lv.mu < lv.nu && lv.nu > 0.0 && lv.nu <= 1.0 && lv.mu >= 0.0)) {
    throw RangeError("risk levels need 0 <= mu < nu <= 1");
  }
  const double n = static_cast<double>(s.size());
  std::size_t k = 0;
  std::size_t m = 0;
  const bool k_ok = integralRank(n * lv.nu, k);
  const bool m_ok = integralRank(n * lv.mu, m);
  if (!k_ok || !m_ok) {
    warn("interval CVaR ranks n*nu=" + std::to_string(n * lv.nu) +
         ", n*mu=" + std::to_string(n * lv.mu) +
         " are not integral; using nearest ranks k=" + std::to_string(k) +
         ", m=" + std::to_string(m));
    if (k <= m || k == 0) {
      throw RangeError("risk levels collapse to an empty rank range");
    }
    lv.nu = static_cast<double>(k) / n;
    lv.mu = static_cast<double>(m) / n;
  }
  const double upper = lv.nu * empirical_cvar(s, lv.nu);
  const double lower = m == 0 ? 0.0 : lv.mu * empirical_cvar(s, lv.mu);
  return upper - lower;
}

BoundedSampler uniform_sampler(double a, double b) {
  BoundedSampler s;
  s.a = a;
  s.b = b;
  s.draw = [a, b](std::mt19937_64& rng) {
    return std::uniform_real_distribution<double>(a, b)(rng);
  };
  return s;
}

BoundCheckResult cvar_bound_check(const BoundedSampler& sampler, std::size_t n,
                                  const RankedRange& r, double delta, int trials,
                                  std::uint64_t seed, std::size_t reference_size) {
  if (trials < kMinBoundTrials) {
    throw ParameterError("bound check needs at least " +
                         std::to_string(kMinBoundTrials) + " trials");
  }
  if (!(sampler.a < sampler.b)) {
    throw ParameterError("sampler support needs a < b");
  }
  if (!(delta > 0.0 && delta <= 1.0)) {
    throw RangeError("delta must lie in (0, 1]");
  }
  if (!sampler.draw) {
    throw ParameterError("sampler has no draw function");
  }
  r.validate(n);
  const double nd = static_cast<double>(n);
  const double width = sampler.b - sampler.a;
  const double tail = std::sqrt(std::log(1.0 / delta) / (2.0 * nd));
  BoundCheckResult out;
  out.upper_epsilon =
      width * (std::sqrt(5.0 * static_cast<double>(r.k) * std::log(3.0 / delta) /
                         (nd * nd)) + tail);
  out.lower_epsilon =
      width * (std::sqrt(5.0 * static_cast<double>(r.m) * std::log(3.0 / delta) /
                         (nd * nd)) + tail);

  // Population proxy from a large reference sample on its own stream.
  {
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(trials));
    std::vector<double> ref(reference_size);
    for (double& v : ref) {
      v = sampler.draw(rng);
    }
    RiskLevelPair levels;
    levels.nu = static_cast<double>(r.k) / nd;
    levels.mu = static_cast<double>(r.m) / nd;
    levels.a = sampler.a;
    levels.b = sampler.b;
    out.population_icvar = empirical_icvar(ValueSet(std::move(ref)), levels);
  }

  int upper = 0;
  int lower = 0;
  long double estimate_sum = 0.0L;
  std::vector<double> sample(n);
  for (int t = 0; t < trials; ++t) {
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(t));
    for (double& v : sample) {
      v = sampler.draw(rng);
    }
    const double estimate = ranked_range_sum(ValueSet(sample), r) / nd;
    estimate_sum += estimate;
    const double gap = out.population_icvar - estimate;
    upper += gap > out.upper_epsilon;
    lower += gap < -out.lower_epsilon;
  }
  out.upper_violation_rate = static_cast<double>(upper) / trials;
  out.lower_violation_rate = static_cast<double>(lower) / trials;
  out.mean_estimate = static_cast<double>(estimate_sum / trials);
  return out;
}

}  // namespace sorr
