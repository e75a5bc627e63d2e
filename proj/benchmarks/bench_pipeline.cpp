#include <benchmark/benchmark.h>

#include "gaussent/estimate.hpp"
#include "gaussent/nla.hpp"
#include "gaussent/shots.hpp"

using namespace gaussent;

namespace {

const CovarianceMatrix& source() {
  static const CovarianceMatrix v = loss_channel(tmss(0.6), 0.1, Mode::B);
  return v;
}

const std::vector<ShotRecord>& shots() {
  static const std::vector<ShotRecord> s = synth_shots(source(), 1000000, 1);
  return s;
}

void BM_SynthShots(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(synth_shots(source(), static_cast<std::size_t>(s.range(0)), 1));
  s.SetItemsProcessed(s.iterations() * s.range(0));
}
BENCHMARK(BM_SynthShots)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_EstimateCovariance(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(estimate_covariance(shots()));
  s.SetItemsProcessed(s.iterations() * static_cast<std::int64_t>(shots().size()));
}
BENCHMARK(BM_EstimateCovariance)->Unit(benchmark::kMillisecond);

void BM_McDistill(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(mc_distill(shots(), {1.4, 3.0}, 7));
}
BENCHMARK(BM_McDistill)->Unit(benchmark::kMillisecond);

void BM_SuccessProbability(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(success_probability(source(), {1.4, 3.0}));
}
BENCHMARK(BM_SuccessProbability);

void BM_FiniteCutoffState(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(finite_cutoff_nla_state(source(), {1.4, 3.0}));
}
BENCHMARK(BM_FiniteCutoffState);

}  // namespace
