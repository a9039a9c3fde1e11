#include <gtest/gtest.h>

#include <random>

#include "sorr/errors.hpp"
#include "sorr/ranked.hpp"
#include "sorr/risk.hpp"

namespace sorr {
namespace {

RiskLevelPair levels(double nu, double mu) {
  RiskLevelPair p;
  p.nu = nu;
  p.mu = mu;
  p.a = 0.0;
  p.b = 10.0;
  return p;
}

TEST(Cvar, WorkedExamples) {
  const ValueSet s{1.0, 2.0, 3.0, 4.0};
  EXPECT_DOUBLE_EQ(empirical_cvar(s, 0.5), 3.5);
  EXPECT_DOUBLE_EQ(empirical_cvar(s, 0.25), 4.0);
  EXPECT_DOUBLE_EQ(empirical_cvar(s, 1.0), 2.5);
}

TEST(Cvar, FractionalLevelMatchesLambdaGrid) {
  const ValueSet s{0.3, 1.7, 2.2, 0.9, 4.1};
  const double alpha = 0.3;  // n * alpha = 1.5, not integral
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 5000; ++i) {
    const double lam = i / 1000.0;
    double acc = 0.0;
    for (double v : s.values()) {
      acc += std::max(v - lam, 0.0);
    }
    best = std::min(best, lam + acc / (5 * alpha));
  }
  EXPECT_NEAR(empirical_cvar(s, alpha), best, 1e-9);
}

TEST(Cvar, RejectsInvalidLevel) {
  const ValueSet s{1.0, 2.0};
  EXPECT_THROW(empirical_cvar(s, 0.0), std::exception);
  EXPECT_THROW(empirical_cvar(s, 1.5), std::exception);
}

TEST(IntervalCvar, WorkedExample) {
  const ValueSet s{1.0, 2.0, 3.0, 4.0};
  EXPECT_DOUBLE_EQ(empirical_icvar(s, levels(0.5, 0.25)), 0.75);
  EXPECT_DOUBLE_EQ(empirical_icvar(s, levels(0.5, 0.25)), ranked_range_sum(s, {1, 2}) / 4.0);
}

TEST(IntervalCvar, ZeroLowerLevelIsSingleCvar) {
  const ValueSet s{1.0, 5.0, 3.0, 4.0, 2.0};
  EXPECT_NEAR(empirical_icvar(s, levels(0.4, 0.0)), 0.4 * empirical_cvar(s, 0.4), 1e-15);
  EXPECT_NEAR(empirical_icvar(s, levels(0.4, 0.0)), top_k_sum(s, 2) / 5.0, 1e-15);
}

TEST(IntervalCvar, IdentityOnRandomSets) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  for (int c = 0; c < 200; ++c) {
    const std::size_t n = 2 + rng() % 30;
    std::vector<double> v(n);
    for (double& x : v) {
      x = u(rng);
    }
    const ValueSet s(v);
    const std::size_t k = 1 + rng() % n;
    const std::size_t m = rng() % k;
    const double nd = static_cast<double>(n);
    EXPECT_NEAR(empirical_icvar(s, levels(k / nd, m / nd)), ranked_range_sum(s, {m, k}) / nd,
                1e-9);
  }
}

TEST(BoundCheck, ViolationRatesStayBelowDelta) {
  const BoundCheckResult r =
      cvar_bound_check(uniform_sampler(0.0, 1.0), 100, {5, 20}, 0.1, 200, 9, 200000);
  EXPECT_LE(r.upper_violation_rate, 0.1);
  EXPECT_LE(r.lower_violation_rate, 0.1);
  // Population interval CVaR of U[0,1] over the quantile band [0.80, 0.95].
  EXPECT_NEAR(r.population_icvar, (0.95 * 0.95 - 0.80 * 0.80) / 2.0 - 0.0, 0.01);
  EXPECT_GT(r.upper_epsilon, 0.0);
  EXPECT_GT(r.lower_epsilon, 0.0);
}

TEST(BoundCheck, TrivialConfidenceNeverViolates) {
  const BoundCheckResult r =
      cvar_bound_check(uniform_sampler(0.0, 1.0), 50, {2, 10}, 1.0, 100, 3, 100000);
  EXPECT_LE(r.upper_violation_rate, 1.0);
  EXPECT_LE(r.lower_violation_rate, 1.0);
  EXPECT_GE(r.upper_violation_rate, 0.0);
}

TEST(BoundCheck, RejectsTooFewTrials) {
  EXPECT_THROW(cvar_bound_check(uniform_sampler(0.0, 1.0), 50, {2, 10}, 0.1, 10, 3, 1000),
               std::exception);
}

}  // namespace
}  // namespace sorr
