#include <random>

#include "doctest.h"
#include "ftc/bitstream.hpp"
#include "ftc/pipeline.hpp"
#include "ftc/synth.hpp"
#include "test_util.hpp"

using namespace ftc;
using namespace ftc_test;

namespace {

EncodeResult encode_small_stream(unsigned q = 0) {
  SynthSpec spec;
  spec.channels = 10;
  spec.active_count = 6;
  spec.height = 4;
  spec.width = 4;
  spec.frame_count = 5;
  spec.seed = 5;
  const auto seq = generate_sequence(spec);
  EncodeConfig config;
  config.cutoff.refresh_period = 2;
  if (q == 0) {
    return encode_sequence(seq, config, RawCodec{});
  }
  return encode_sequence(seq, config, QrleCodec{q});
}

}  // namespace

TEST_CASE("period HLS overhead is fixed by the channel count") {
  CHECK(period_hls_bytes(320) == 1 + 40 + 4);
  CHECK(period_hls_bytes(1) == 1 + 1 + 4);
  CHECK(period_hls_bytes(8) == 1 + 1 + 4);
  CHECK(period_hls_bytes(9) == 1 + 2 + 4);
}

TEST_CASE("mask bits serialize LSB-first within each byte") {
  // Channels {0, 3, 8, 9} of 10: byte 0 = 0b00001001, byte 1 = 0b00000011.
  std::vector<bool> bits(10, false);
  bits[0] = bits[3] = bits[8] = bits[9] = true;
  const ActiveChannelMask mask(bits);
  const auto bytes = pack_mask_bits(mask);
  REQUIRE(bytes.size() == 2);
  CHECK(bytes[0] == 0x09);
  CHECK(bytes[1] == 0x03);
  CHECK(unpack_mask_bits(bytes, 10) == mask);
}

TEST_CASE("mask bit packing round-trips random masks") {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t channels = 1 + rng() % 40;
    std::vector<bool> bits(channels);
    std::size_t active = 0;
    for (std::size_t i = 0; i < channels; ++i) {
      bits[i] = rng() % 2 == 0;
      active += bits[i];
    }
    if (active == 0) bits[0] = true;
    const ActiveChannelMask mask(bits);
    CHECK(unpack_mask_bits(pack_mask_bits(mask), channels) == mask);
  }
}

TEST_CASE("streams parse back to their writer's structure") {
  const auto result = encode_small_stream();
  const auto parsed = parse_stream(result.bytes);

  CHECK(parsed.header == result.header);
  REQUIRE(parsed.periods.size() == 3);  // 5 frames at refresh 2
  CHECK(parsed.frames[0].size() == 2);
  CHECK(parsed.frames[2].size() == 1);
  for (const auto& period : parsed.periods) {
    CHECK(period.truncation_enabled);
    CHECK(period.mask.active_count() == 6);
    CHECK(period.layout == compute_layout(6, 4, 4));
  }

  SUBCASE("serialize(parse(bytes)) reproduces the bytes") {
    CHECK(serialize_stream(parsed) == result.bytes);
  }
  SUBCASE("read_stream decodes payloads through the registry") {
    const auto decoded = read_stream(result.bytes, CodecRegistry::with_defaults());
    REQUIRE(decoded.frames.size() == 5);
    for (const auto& frame : decoded.frames) {
      CHECK(frame.samples.size() == frame.layout.sample_count());
    }
  }
}

TEST_CASE("stream byte budget matches the declared layout") {
  const auto result = encode_small_stream();
  // header + 3 periods of HLS + 5 frames of (12-byte preamble + raw payload).
  const std::size_t payload = compute_layout(6, 4, 4).sample_count() * 2;
  CHECK(result.bytes.size() ==
        kStreamHeaderBytes + 3 * period_hls_bytes(10) + 5 * (12 + payload));
  CHECK(result.hls_bytes() == 3 * period_hls_bytes(10));
}

TEST_CASE("stream parse errors name the byte offset") {
  auto bytes = encode_small_stream().bytes;

  SUBCASE("bad magic") {
    bytes[1] = 'X';
    try {
      parse_stream(bytes);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.byte_offset() == 0);
    }
  }
  SUBCASE("unknown version") {
    bytes[4] = 2;
    try {
      parse_stream(bytes);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.byte_offset() == 4);
    }
  }
  SUBCASE("zero channels") {
    bytes[5] = bytes[6] = 0;
    try {
      parse_stream(bytes);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.byte_offset() == 5);
    }
  }
  SUBCASE("degenerate alpha") {
    bytes[17] = bytes[19];  // num = den
    bytes[18] = bytes[20];
    try {
      parse_stream(bytes);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.byte_offset() == 17);
    }
  }
  SUBCASE("unknown codec id") {
    bytes[21] = 200;
    try {
      read_stream(bytes, CodecRegistry::with_defaults());
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.byte_offset() == 21);
    }
  }
  SUBCASE("truncation flag out of range") {
    bytes[22] = 7;
    try {
      parse_stream(bytes);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.byte_offset() == 22);
    }
  }
  SUBCASE("bitmask padding bits set") {
    bytes[24] |= 0x80;  // channel count 10, bit 15 is padding
    try {
      parse_stream(bytes);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.byte_offset() == 24);
    }
  }
  SUBCASE("bitmask/layout inconsistency") {
    bytes[25] = 9;  // rows field no longer matches the mask popcount
    try {
      parse_stream(bytes);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.byte_offset() == 25);
    }
  }
  SUBCASE("truncated payload") {
    bytes.resize(bytes.size() - 10);
    CHECK_THROWS_AS(parse_stream(bytes), ParseError);
  }
  SUBCASE("payload length overruns the stream") {
    // First frame's payload_len sits after the first period HLS + 8 scale bytes.
    const std::size_t at = kStreamHeaderBytes + period_hls_bytes(10) + 8;
    bytes[at + 3] = 0x7f;
    try {
      parse_stream(bytes);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.byte_offset() == at);
    }
  }
  SUBCASE("trailing data") {
    bytes.push_back(0);
    try {
      parse_stream(bytes);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.byte_offset() == bytes.size() - 1);
    }
  }
}

TEST_CASE("a disabled period must keep every channel") {
  auto bytes = encode_small_stream().bytes;
  // Clear the enabled flag of period 0 while its bitmask still truncates.
  bytes[22] = 0;
  CHECK_THROWS_AS(parse_stream(bytes), ParseError);
}

TEST_CASE("write_stream validates plan consistency") {
  SynthSpec spec;
  spec.channels = 6;
  spec.active_count = 4;
  spec.height = 2;
  spec.width = 2;
  spec.frame_count = 4;
  const auto seq = generate_sequence(spec);
  EncodeConfig config;
  config.cutoff.refresh_period = 2;
  const auto good = encode_sequence(seq, config, RawCodec{});

  StreamHeader header = good.header;
  const auto plan0 = plan_period(seq.frame(0), config.cutoff);
  const auto plan1 = plan_period(seq.frame(2), config.cutoff,
                                 plan0.mask.active_count(), 1);
  std::vector<PackedFrame> packed;
  for (std::size_t f = 0; f < 4; ++f) {
    packed.push_back(pack(seq.frame(f), f < 2 ? plan0.mask : plan1.mask));
  }

  SUBCASE("valid input round-trips") {
    const auto bytes =
        write_stream(header, std::vector<PeriodPlan>{plan0, plan1}, packed,
                     RawCodec{});
    CHECK(bytes == good.bytes);
  }
  SUBCASE("codec id mismatch") {
    CHECK_THROWS_AS(write_stream(header, std::vector<PeriodPlan>{plan0, plan1},
                                 packed, QrleCodec{8}),
                    InvalidInput);
  }
  SUBCASE("plan count mismatch") {
    CHECK_THROWS_AS(
        write_stream(header, std::vector<PeriodPlan>{plan0}, packed, RawCodec{}),
        InvalidInput);
  }
  SUBCASE("period retaining more channels than period 0") {
    auto inflated = plan1;
    inflated.mask = ActiveChannelMask::all_active(6);
    inflated.truncation_enabled = false;
    std::vector<PackedFrame> repacked = packed;
    repacked[2] = pack(seq.frame(2), inflated.mask);
    repacked[3] = pack(seq.frame(3), inflated.mask);
    CHECK_THROWS_AS(write_stream(header,
                                 std::vector<PeriodPlan>{plan0, inflated},
                                 repacked, RawCodec{}),
                    InvalidInput);
  }
  SUBCASE("frame packed under the wrong layout") {
    auto wrong = packed;
    wrong[1] = pack(seq.frame(1), ActiveChannelMask::all_active(6));
    CHECK_THROWS_AS(write_stream(header, std::vector<PeriodPlan>{plan0, plan1},
                                 wrong, RawCodec{}),
                    InvalidInput);
  }
}

TEST_CASE("parsers survive arbitrary corruption with typed errors") {
  const auto good = encode_small_stream(8).bytes;
  std::mt19937_64 rng(89);
  const auto registry = CodecRegistry::with_defaults();

  for (int trial = 0; trial < 500; ++trial) {
    auto bytes = good;
    switch (rng() % 3) {
      case 0:  // truncate
        bytes.resize(rng() % bytes.size());
        break;
      case 1:  // flip bytes
        for (int hits = 0; hits < 4; ++hits) {
          bytes[rng() % bytes.size()] = static_cast<std::uint8_t>(rng());
        }
        break;
      default:  // extend with garbage
        for (int extra = 0; extra < 8; ++extra) {
          bytes.push_back(static_cast<std::uint8_t>(rng()));
        }
        break;
    }
    try {
      const auto decoded = read_stream(bytes, registry);
      // Corruption that still parses must at least be self-consistent.
      CHECK(decoded.frames.size() == decoded.header.frame_count);
    } catch (const Error&) {
      // Any structured failure is acceptable; crashes and foreign
      // exception types are not.
    }
  }
}

TEST_CASE("qrle streams re-serialize exactly after parsing") {
  const auto result = encode_small_stream(8);
  const auto parsed = parse_stream(result.bytes);
  CHECK(serialize_stream(parsed) == result.bytes);

  const auto decoded = read_stream(result.bytes, CodecRegistry::with_defaults(8));
  REQUIRE(decoded.frames.size() == 5);
}
