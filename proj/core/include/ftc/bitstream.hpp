#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ftc/inner_codec.hpp"
#include "ftc/packing.hpp"
#include "ftc/truncation.hpp"

namespace ftc {

// .fctb bitstream, little-endian, fields in declaration order:
//   StreamHeader, then per period a PeriodHeader followed by that period's
//   FramePayloads in display order. Byte layout is normative; golden fixture
//   streams in the test suite pin it.

struct StreamHeader {
  std::uint16_t channels = 0;     // original channel count C
  std::uint16_t tile_height = 0;  // H
  std::uint16_t tile_width = 0;   // W
  std::uint16_t refresh_period = 0;
  std::uint32_t frame_count = 0;
  std::uint16_t alpha_num = 0;
  std::uint16_t alpha_den = 0;
  std::uint8_t inner_codec_id = 0;

  bool operator==(const StreamHeader&) const = default;
};

// magic(4) version(1) C(2) H(2) W(2) refresh(2) frames(4) a_num(2) a_den(2) codec(1)
inline constexpr std::size_t kStreamHeaderBytes = 22;
inline constexpr std::uint8_t kStreamVersion = 1;

/// Fixed-size per-period side information: enabled flag, raw activation
/// bitmask (one bit per original channel, stored as-is, no entropy coding),
/// and the signaled tile layout.
constexpr std::size_t period_hls_bytes(std::size_t channels) {
  return 1 + (channels + 7) / 8 + 4;
}

/// Activation bitmask bytes: channel i lives in byte i/8 at bit i%8
/// (LSB-first). Padding bits in the last byte are zero.
std::vector<std::uint8_t> pack_mask_bits(const ActiveChannelMask& mask);
ActiveChannelMask unpack_mask_bits(std::span<const std::uint8_t> bytes,
                                   std::size_t channels);

struct ParsedPeriod {
  bool truncation_enabled = false;
  ActiveChannelMask mask;
  FrameLayout layout;  // includes the header's tile dimensions
};

struct ParsedFrame {
  ScaleParams scale;
  std::vector<std::uint8_t> payload;  // inner-codec bytes, kept verbatim
};

/// Structural view of a stream: exactly what the bytes say, inner-codec
/// payloads untouched. serialize(parse(bytes)) == bytes for every valid
/// stream.
struct ParsedStream {
  StreamHeader header;
  std::vector<ParsedPeriod> periods;
  std::vector<std::vector<ParsedFrame>> frames;  // frames[p] for period p
};

std::vector<std::uint8_t> serialize_stream(const ParsedStream& stream);
ParsedStream parse_stream(std::span<const std::uint8_t> bytes);

/// Fully decoded stream: header, per-period side info, and the packed frames
/// with samples restored through the inner codec, in display order.
struct DecodedStream {
  StreamHeader header;
  std::vector<ParsedPeriod> periods;
  std::vector<PackedFrame> frames;
};

/// Serializes a planned, packed sequence. plans must cover the header's
/// frame count under its refresh period, and every frame must be packed
/// under its period's mask.
std::vector<std::uint8_t> write_stream(const StreamHeader& header,
                                       std::span<const PeriodPlan> plans,
                                       std::span<const PackedFrame> packed_frames,
                                       const InnerCodec& codec);

DecodedStream read_stream(std::span<const std::uint8_t> bytes,
                          const CodecRegistry& registry);

}  // namespace ftc
