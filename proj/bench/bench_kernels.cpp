#include <benchmark/benchmark.h>

#include "omav/allocation/condition_scan.hpp"
#include "omav/design/envelope.hpp"

using namespace omav;

namespace {

const Morphology& tilted() {
  static const Morphology m = Morphology::hexarotor({0.6, -0.6, 0.6, -0.6, 0.6, -0.6});
  return m;
}

design::EnvelopeOptions envelopeOptions(const benchmark::State& state) {
  design::EnvelopeOptions o;
  o.subdivision_level = static_cast<int>(state.range(0));
  o.method = state.range(1) == 0 ? design::EnvelopeMethod::kAllocation
                                 : design::EnvelopeMethod::kReachable;
  return o;
}

void BM_EnvelopeSerial(benchmark::State& state) {
  const auto o = envelopeOptions(state);
  for (auto _ : state) benchmark::DoNotOptimize(design::computeEnvelopeSerial(tilted(), o).min);
}

void BM_EnvelopeParallel(benchmark::State& state) {
  const auto o = envelopeOptions(state);
  for (auto _ : state) benchmark::DoNotOptimize(design::computeEnvelope(tilted(), o).min);
}

allocation::ConditionScanOptions scanOptions(const benchmark::State& state) {
  allocation::ConditionScanOptions o;
  o.subdivision_level = static_cast<int>(state.range(0));
  o.bias = true;
  return o;
}

void BM_ConditionScanSerial(benchmark::State& state) {
  const auto o = scanOptions(state);
  const Morphology m = Morphology::hexarotor();
  for (auto _ : state) benchmark::DoNotOptimize(allocation::conditionScanSerial(m, o).max_log_kappa);
}

void BM_ConditionScanParallel(benchmark::State& state) {
  const auto o = scanOptions(state);
  const Morphology m = Morphology::hexarotor();
  for (auto _ : state) benchmark::DoNotOptimize(allocation::conditionScan(m, o).max_log_kappa);
}

}  // namespace

// args: {subdivision level, method (0 allocation, 1 reachable)}
BENCHMARK(BM_EnvelopeSerial)->Args({3, 0})->Args({4, 0})->Args({2, 1})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EnvelopeParallel)->Args({3, 0})->Args({4, 0})->Args({2, 1})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ConditionScanSerial)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ConditionScanParallel)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
