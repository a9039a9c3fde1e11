#include <benchmark/benchmark.h>

#include <random>

#include "sorr/data_ops.hpp"
#include "sorr/objective.hpp"
#include "sorr/optim.hpp"

namespace {

sorr::Dataset gaussianMulticlass(std::size_t n, int d, int l) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g(0.0, 1.0);
  sorr::Dataset data;
  data.features.resize(static_cast<Eigen::Index>(n), d);
  for (Eigen::Index i = 0; i < data.features.size(); ++i) {
    data.features.data()[i] = g(rng);
  }
  data.l = l;
  for (std::size_t i = 0; i < n; ++i) {
    data.labels.push_back(static_cast<int>(rng() % static_cast<std::uint64_t>(l)));
  }
  return data;
}

void BM_EvaluateSoftmaxLosses(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const sorr::Dataset data = gaussianMulticlass(n, 784, 10);
  const sorr::LinearModel model(10, 784, true);
  const sorr::LossSpec loss{sorr::LossKind::softmax, 1};
  for (auto _ : state) {
    benchmark::DoNotOptimize(sorr::evaluate_losses(model, data, loss, true));
  }
  state.SetItemsProcessed(static_cast<long>(state.iterations() * n));
}
BENCHMARK(BM_EvaluateSoftmaxLosses)->Arg(100)->Arg(1000)->Unit(benchmark::kMicrosecond);

void BM_DcaSyntheticOuterRound(benchmark::State& state) {
  const sorr::Dataset data = sorr::gen_synthetic({true, 1, 0});
  sorr::TrainConfig cfg;
  cfg.r = {1, 2};
  cfg.outer_epochs = 1;
  cfg.inner_epochs = static_cast<int>(state.range(0));
  const sorr::LossSpec loss{sorr::LossKind::logistic, 1};
  for (auto _ : state) {
    benchmark::DoNotOptimize(sorr::dca_train(data, loss, cfg));
  }
}
BENCHMARK(BM_DcaSyntheticOuterRound)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_DcaMinibatchStep(benchmark::State& state) {
  const sorr::Dataset data = gaussianMulticlass(10000, 784, 10);
  sorr::TrainConfig cfg;
  cfg.r = {500, 8000};
  cfg.batch = 100;
  cfg.outer_epochs = 1;
  cfg.inner_epochs = 100;
  const sorr::LossSpec loss{sorr::LossKind::softmax, 1};
  for (auto _ : state) {
    benchmark::DoNotOptimize(sorr::dca_train(data, loss, cfg));
  }
}
BENCHMARK(BM_DcaMinibatchStep)->Unit(benchmark::kMillisecond);

}  // namespace
