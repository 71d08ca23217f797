#include <benchmark/benchmark.h>

#include "ftc/metrics.hpp"
#include "ftc/synth.hpp"
#include "ftc/tensor.hpp"
#include "ftc/truncation.hpp"

namespace {

const ftc::FeatureTensor& frame() {
  static const ftc::FeatureTensor tensor = [] {
    ftc::SynthSpec spec;
    spec.channels = 320;
    spec.active_count = 200;
    spec.height = 32;
    spec.width = 32;
    spec.frame_count = 1;
    spec.seed = 556;
    return ftc::generate_sequence(spec).frame(0);
  }();
  return tensor;
}

void BM_ChannelStats(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(ftc::channel_stats(frame()));
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<int64_t>(frame().value_count()));
}
BENCHMARK(BM_ChannelStats);

void BM_PlanPeriod(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(ftc::plan_period(frame(), ftc::CutoffConfig{}));
  }
}
BENCHMARK(BM_PlanPeriod);

void BM_BdRate(benchmark::State& state) {
  const ftc::RateAccuracyCurve anchor(
      {{1000.0, 0.40}, {3000.0, 0.46}, {6000.0, 0.50}, {12000.0, 0.52}});
  const ftc::RateAccuracyCurve test(
      {{900.0, 0.40}, {2500.0, 0.47}, {5200.0, 0.50}, {11000.0, 0.53}});
  for (auto _ : state) {
    benchmark::DoNotOptimize(ftc::bd_rate(anchor, test));
  }
}
BENCHMARK(BM_BdRate);

}  // namespace
