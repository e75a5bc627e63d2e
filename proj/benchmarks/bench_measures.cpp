#include <benchmark/benchmark.h>

#include "gaussent/covariance.hpp"
#include "gaussent/gree.hpp"
#include "gaussent/measures.hpp"
#include "gaussent/squashed.hpp"

using namespace gaussent;

namespace {

const CovarianceMatrix& state() {
  static const CovarianceMatrix v = add_noise(loss_channel(tmss(0.8), 0.3, Mode::B), 0.05);
  return v;
}

void BM_LogNegativity(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(log_negativity(state()));
}
BENCHMARK(BM_LogNegativity);

void BM_EntanglementOfFormation(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(eof_quadrature_symmetric(state()));
}
BENCHMARK(BM_EntanglementOfFormation);

void BM_ReverseCoherentInformation(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(reverse_coherent_information(state()));
}
BENCHMARK(BM_ReverseCoherentInformation);

void BM_SquashedBound(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(squashed_upper_bound(state()));
}
BENCHMARK(BM_SquashedBound);

void BM_Gree(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(gree(state()));
}
BENCHMARK(BM_Gree)->Unit(benchmark::kMillisecond);

}  // namespace
