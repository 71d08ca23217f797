#include <cmath>
#include <random>

#include "doctest.h"
#include "ftc/manifest.hpp"
#include "ftc/metrics.hpp"
#include "ftc/pipeline.hpp"
#include "ftc/synth.hpp"
#include "test_util.hpp"

using namespace ftc;
using namespace ftc_test;

namespace {

SynthSpec small_spec() {
  SynthSpec spec;
  spec.channels = 24;
  spec.active_count = 15;
  spec.height = 8;
  spec.width = 8;
  spec.frame_count = 6;
  spec.seed = 12;
  return spec;
}

}  // namespace

TEST_CASE("decode restores the original shape and flattens truncated channels") {
  const auto spec = small_spec();
  const auto seq = generate_sequence(spec);
  EncodeConfig config;
  config.cutoff.refresh_period = 3;

  const auto result = encode_sequence(seq, config, RawCodec{});
  const auto decoded = decode_sequence(result.bytes, CodecRegistry::with_defaults());

  CHECK(decoded.frame_count() == seq.frame_count());
  CHECK(decoded.channels() == seq.channels());
  CHECK(decoded.height() == seq.height());
  CHECK(decoded.width() == seq.width());

  const auto active = synth_active_channels(spec);
  for (const auto& frame : decoded.frames()) {
    const auto stats = channel_stats(frame);
    for (std::size_t c = 0; c < spec.channels; ++c) {
      if (!active[c]) CHECK(stats[c].range == 0.0f);
    }
  }
}

TEST_CASE("lossless inner codec keeps transmitted values within the "
          "quantizer bound") {
  const auto spec = small_spec();
  const auto seq = generate_sequence(spec);
  const auto active = synth_active_channels(spec);
  EncodeConfig config;

  const auto result = encode_sequence(seq, config, QrleCodec{1});
  const auto decoded =
      decode_sequence(result.bytes, CodecRegistry::with_defaults(1));

  // Scale of each frame covers exactly [0, signal_amplitude] by construction.
  const double bound = static_cast<double>(spec.signal_amplitude) / 2046.0;
  for (std::size_t f = 0; f < seq.frame_count(); ++f) {
    for (std::size_t c = 0; c < spec.channels; ++c) {
      if (!active[c]) continue;
      const auto a = seq.frame(f).channel(c);
      const auto b = decoded.frame(f).channel(c);
      for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(std::fabs(static_cast<double>(a[i]) - static_cast<double>(b[i])) <=
              bound);
      }
    }
  }
}

TEST_CASE("truncation strictly reduces the stream size at equal step") {
  const auto spec = small_spec();
  const auto seq = generate_sequence(spec);
  EncodeConfig on;
  EncodeConfig off;
  off.truncation = false;

  for (unsigned q : {1u, 8u}) {
    const auto with = encode_sequence(seq, on, QrleCodec{q});
    const auto without = encode_sequence(seq, off, QrleCodec{q});
    CHECK(with.bytes.size() < without.bytes.size());
    for (const auto& period : without.periods) {
      CHECK_FALSE(period.truncation_enabled);
      CHECK(period.active_count == spec.channels);
    }
  }
}

TEST_CASE("truncation never changes transmitted channels") {
  const auto spec = small_spec();
  const auto seq = generate_sequence(spec);
  const auto active = synth_active_channels(spec);
  EncodeConfig on;
  EncodeConfig off;
  off.truncation = false;

  const auto with =
      decode_sequence(encode_sequence(seq, on, QrleCodec{8}).bytes,
                      CodecRegistry::with_defaults(8));
  const auto without =
      decode_sequence(encode_sequence(seq, off, QrleCodec{8}).bytes,
                      CodecRegistry::with_defaults(8));

  // The synth corpus pins both paths to the same scale, so the transmitted
  // samples decode identically.
  for (std::size_t f = 0; f < seq.frame_count(); ++f) {
    for (std::size_t c = 0; c < spec.channels; ++c) {
      if (!active[c]) continue;
      const auto a = with.frame(f).channel(c);
      const auto b = without.frame(f).channel(c);
      for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
    }
  }
}

TEST_CASE("an all-active corpus encodes as the no-truncation path") {
  auto spec = small_spec();
  spec.active_count = spec.channels;
  const auto seq = generate_sequence(spec);
  EncodeConfig on;
  EncodeConfig off;
  off.truncation = false;

  const auto a = encode_sequence(seq, on, RawCodec{});
  const auto b = encode_sequence(seq, off, RawCodec{});
  for (const auto& period : a.periods) CHECK_FALSE(period.truncation_enabled);
  CHECK(a.bytes == b.bytes);

  const auto da = decode_sequence(a.bytes, CodecRegistry::with_defaults());
  const auto db = decode_sequence(b.bytes, CodecRegistry::with_defaults());
  CHECK(da == db);
}

TEST_CASE("later periods obey the period-0 capacity") {
  // Hand-built corpus whose statistics shift between periods: period 1's
  // first frame has more qualifying channels than period 0's.
  std::vector<FeatureTensor> frames;
  auto push_frames = [&](const std::vector<float>& amps, std::size_t count) {
    for (std::size_t i = 0; i < count; ++i) {
      frames.push_back(make_ramp_tensor(4, 4, amps));
    }
  };
  std::vector<float> period0(8, 0.01f);
  for (std::size_t c = 0; c < 5; ++c) period0[c] = 4.0f + 0.1f * c;
  std::vector<float> period1(8, 0.01f);
  for (std::size_t c = 0; c < 7; ++c) period1[c] = 4.0f + 0.1f * c;
  std::vector<float> period2(8, 0.01f);
  for (std::size_t c = 0; c < 3; ++c) period2[c] = 4.0f + 0.1f * c;
  push_frames(period0, 4);
  push_frames(period1, 4);
  push_frames(period2, 2);
  const FeatureTensorSequence seq(std::move(frames));

  EncodeConfig config;
  config.cutoff.refresh_period = 4;
  const auto result = encode_sequence(seq, config, RawCodec{});

  REQUIRE(result.periods.size() == 3);
  CHECK(result.periods[0].active_count == 5);
  CHECK(result.periods[1].active_count == 5);  // clamped from 7
  CHECK(result.periods[2].active_count == 3);

  // The clamp keeps the largest ranges: channels 2..6 of period 1.
  const auto decoded = read_stream(result.bytes, CodecRegistry::with_defaults());
  CHECK(decoded.periods[1].mask.active_indices() ==
        std::vector<std::size_t>{2, 3, 4, 5, 6});
}

TEST_CASE("run manifest renders as key=value lines and validates paths") {
  RunManifest manifest;
  manifest.input_path = "in.fcmt";
  manifest.output_path = "out.fctb";
  manifest.inner_codec_id = kQrleCodecId;
  manifest.q_ladder = {8};
  manifest.emitted_rate_bits = {160280};
  CHECK(manifest_text(manifest) ==
        "input=in.fcmt\noutput=out.fctb\nalpha=2/3\nrefresh=128\n"
        "codec_id=1\ntruncation=1\nq_ladder=8\nrate_bits=160280\n");

  manifest.output_path.clear();
  CHECK_THROWS_AS(manifest_text(manifest), InvalidInput);
}

TEST_CASE("encode reports totals consistent with the byte stream") {
  const auto spec = small_spec();
  const auto seq = generate_sequence(spec);
  const auto result = encode_sequence(seq, EncodeConfig{}, RawCodec{});
  CHECK(result.total_bits() == result.bytes.size() * 8);
  CHECK(result.header.frame_count == spec.frame_count);
  CHECK(result.periods.size() == 1);
  CHECK(result.hls_bytes() == period_hls_bytes(spec.channels));
}
