#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "sorr/losses.hpp"
#include "sorr/ranked.hpp"
#include "sorr/risk.hpp"

namespace {

sorr::ValueSet randomSet(std::size_t n) {
  std::mt19937_64 rng(n);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) {
    x = u(rng);
  }
  return sorr::ValueSet(std::move(v));
}

void BM_TopKSum(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const sorr::ValueSet s = randomSet(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sorr::top_k_sum(s, n / 10));
  }
  state.SetItemsProcessed(static_cast<long>(state.iterations() * n));
}
BENCHMARK(BM_TopKSum)->RangeMultiplier(10)->Range(100, 1'000'000);

void BM_RankedRangeSum(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const sorr::ValueSet s = randomSet(n);
  const sorr::RankedRange r{n / 20, n / 5};
  for (auto _ : state) {
    benchmark::DoNotOptimize(sorr::ranked_range_sum(s, r));
  }
  state.SetItemsProcessed(static_cast<long>(state.iterations() * n));
}
BENCHMARK(BM_RankedRangeSum)->RangeMultiplier(10)->Range(100, 1'000'000);

void BM_RankOrder(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const sorr::ValueSet s = randomSet(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sorr::rank_order(s.span()));
  }
  state.SetItemsProcessed(static_cast<long>(state.iterations() * n));
}
BENCHMARK(BM_RankOrder)->RangeMultiplier(10)->Range(100, 100'000);

void BM_CornerOracle(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const sorr::ValueSet s = randomSet(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sorr::bilevel_corner_oracle(s, {n / 4, n / 2}));
  }
}
BENCHMARK(BM_CornerOracle)->DenseRange(8, 16, 4);

void BM_TkmlLoss(benchmark::State& state) {
  const auto l = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> scores(l);
  for (double& x : scores) {
    x = g(rng);
  }
  const sorr::LabelSet Y({0, 2, 5});
  for (auto _ : state) {
    benchmark::DoNotOptimize(sorr::tkml_loss_subgrad(scores, Y, 2));
  }
}
BENCHMARK(BM_TkmlLoss)->Arg(6)->Arg(14)->Arg(100);

void BM_IntervalCvar(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const sorr::ValueSet s = randomSet(n);
  sorr::RiskLevelPair levels;
  levels.nu = 0.2;
  levels.mu = 0.05;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sorr::empirical_icvar(s, levels));
  }
}
BENCHMARK(BM_IntervalCvar)->Arg(1000)->Arg(100'000);

}  // namespace
