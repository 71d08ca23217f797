#include <benchmark/benchmark.h>

#include "ftc/inner_codec.hpp"
#include "ftc/packing.hpp"
#include "ftc/pipeline.hpp"
#include "ftc/synth.hpp"

namespace {

const ftc::FeatureTensorSequence& corpus() {
  static const ftc::FeatureTensorSequence seq = [] {
    ftc::SynthSpec spec;
    spec.channels = 320;
    spec.active_count = 200;
    spec.height = 32;
    spec.width = 32;
    spec.frame_count = 4;
    spec.seed = 555;
    return ftc::generate_sequence(spec);
  }();
  return seq;
}

const ftc::PeriodPlan& plan() {
  static const ftc::PeriodPlan p =
      ftc::plan_period(corpus().frame(0), ftc::CutoffConfig{});
  return p;
}

void BM_Pack(benchmark::State& state) {
  const auto& frame = corpus().frame(0);
  const auto samples = ftc::pack(frame, plan().mask).samples.size();
  for (auto _ : state) {
    benchmark::DoNotOptimize(ftc::pack(frame, plan().mask));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(samples));
}
BENCHMARK(BM_Pack);

void BM_Unpack(benchmark::State& state) {
  const auto packed = ftc::pack(corpus().frame(0), plan().mask);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ftc::unpack(packed, plan().mask));
  }
}
BENCHMARK(BM_Unpack);

void BM_QrleEncode(benchmark::State& state) {
  const auto packed = ftc::pack(corpus().frame(0), plan().mask);
  const unsigned q = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(ftc::qrle_encode(packed.samples, q));
  }
  state.SetBytesProcessed(state.iterations() *
                          static_cast<int64_t>(packed.samples.size() * 2));
}
BENCHMARK(BM_QrleEncode)->Arg(1)->Arg(8)->Arg(32);

void BM_QrleDecode(benchmark::State& state) {
  const auto packed = ftc::pack(corpus().frame(0), plan().mask);
  const unsigned q = static_cast<unsigned>(state.range(0));
  const auto bytes = ftc::qrle_encode(packed.samples, q);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        ftc::qrle_decode(bytes, packed.samples.size(), q));
  }
}
BENCHMARK(BM_QrleDecode)->Arg(1)->Arg(8)->Arg(32);

void BM_EncodeSequence(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        ftc::encode_sequence(corpus(), ftc::EncodeConfig{}, ftc::QrleCodec{8}));
  }
}
BENCHMARK(BM_EncodeSequence);

void BM_DecodeSequence(benchmark::State& state) {
  const auto result =
      ftc::encode_sequence(corpus(), ftc::EncodeConfig{}, ftc::QrleCodec{8});
  const auto registry = ftc::CodecRegistry::with_defaults(8);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ftc::decode_sequence(result.bytes, registry));
  }
}
BENCHMARK(BM_DecodeSequence);

}  // namespace

BENCHMARK_MAIN();
