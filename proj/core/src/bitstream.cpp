#include "ftc/bitstream.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "ftc/bytes.hpp"

namespace ftc {

namespace {

void validate_header_fields(const StreamHeader& h) {
  if (h.channels == 0 || h.tile_height == 0 || h.tile_width == 0) {
    throw InvalidInput("fctb: header dimensions must be >= 1");
  }
  if (h.refresh_period == 0) {
    throw InvalidInput("fctb: refresh period must be >= 1");
  }
  if (h.frame_count == 0) {
    throw InvalidInput("fctb: frame count must be >= 1");
  }
  if (h.alpha_num == 0 || h.alpha_num >= h.alpha_den) {
    throw InvalidInput("fctb: alpha must satisfy 0 < num/den < 1");
  }
}

void write_header(ByteWriter& w, const StreamHeader& h) {
  w.magic("FCTB");
  w.u8(kStreamVersion);
  w.u16(h.channels);
  w.u16(h.tile_height);
  w.u16(h.tile_width);
  w.u16(h.refresh_period);
  w.u32(h.frame_count);
  w.u16(h.alpha_num);
  w.u16(h.alpha_den);
  w.u8(h.inner_codec_id);
}

StreamHeader parse_header(ByteReader& r) {
  r.expect_magic("FCTB");

  const std::size_t version_at = r.offset();
  const std::uint8_t version = r.u8("version");
  if (version != kStreamVersion) {
    r.fail_at("unknown version " + std::to_string(version), version_at);
  }

  StreamHeader h;
  const std::size_t dims_at = r.offset();
  h.channels = r.u16("channel count");
  h.tile_height = r.u16("tile height");
  h.tile_width = r.u16("tile width");
  if (h.channels == 0 || h.tile_height == 0 || h.tile_width == 0) {
    r.fail_at("header dimensions must be >= 1", dims_at);
  }

  const std::size_t refresh_at = r.offset();
  h.refresh_period = r.u16("refresh period");
  if (h.refresh_period == 0) r.fail_at("refresh period must be >= 1", refresh_at);

  const std::size_t frames_at = r.offset();
  h.frame_count = r.u32("frame count");
  if (h.frame_count == 0) r.fail_at("frame count must be >= 1", frames_at);

  const std::size_t alpha_at = r.offset();
  h.alpha_num = r.u16("alpha numerator");
  h.alpha_den = r.u16("alpha denominator");
  if (h.alpha_num == 0 || h.alpha_num >= h.alpha_den) {
    r.fail_at("alpha must satisfy 0 < num/den < 1", alpha_at);
  }

  h.inner_codec_id = r.u8("inner codec id");
  return h;
}

}  // namespace

std::vector<std::uint8_t> pack_mask_bits(const ActiveChannelMask& mask) {
  std::vector<std::uint8_t> bytes((mask.size() + 7) / 8, 0);
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (mask.is_active(i)) {
      bytes[i / 8] |= static_cast<std::uint8_t>(1u << (i % 8));
    }
  }
  return bytes;
}

ActiveChannelMask unpack_mask_bits(std::span<const std::uint8_t> bytes,
                                   std::size_t channels) {
  if (bytes.size() != (channels + 7) / 8) {
    throw InvalidInput("bitmask: expected " +
                       std::to_string((channels + 7) / 8) + " bytes, got " +
                       std::to_string(bytes.size()));
  }
  std::vector<bool> bits(channels);
  for (std::size_t i = 0; i < channels; ++i) {
    bits[i] = (bytes[i / 8] >> (i % 8)) & 1u;
  }
  return ActiveChannelMask(std::move(bits));
}

std::vector<std::uint8_t> serialize_stream(const ParsedStream& stream) {
  validate_header_fields(stream.header);
  const auto spans =
      period_boundaries(stream.header.frame_count, stream.header.refresh_period);
  if (stream.periods.size() != spans.size() ||
      stream.frames.size() != spans.size()) {
    throw InvalidInput("fctb: period count does not match frame count and "
                       "refresh period");
  }

  ByteWriter w;
  write_header(w, stream.header);
  for (std::size_t p = 0; p < spans.size(); ++p) {
    const ParsedPeriod& period = stream.periods[p];
    if (period.mask.size() != stream.header.channels) {
      throw InvalidInput("fctb: period " + std::to_string(p) +
                         " mask does not cover the channel count");
    }
    if (!period.truncation_enabled && !period.mask.all_set()) {
      throw InvalidInput("fctb: period " + std::to_string(p) +
                         " signals no truncation but masks channels");
    }
    if (stream.frames[p].size() != spans[p].length) {
      throw InvalidInput("fctb: period " + std::to_string(p) +
                         " holds the wrong number of frame payloads");
    }
    if (period.layout.rows > std::numeric_limits<std::uint16_t>::max() ||
        period.layout.cols > std::numeric_limits<std::uint16_t>::max()) {
      throw InvalidInput("fctb: layout does not fit in u16");
    }

    w.u8(period.truncation_enabled ? 1 : 0);
    w.raw(pack_mask_bits(period.mask));
    w.u16(static_cast<std::uint16_t>(period.layout.rows));
    w.u16(static_cast<std::uint16_t>(period.layout.cols));

    for (const ParsedFrame& frame : stream.frames[p]) {
      if (frame.payload.size() > std::numeric_limits<std::uint32_t>::max()) {
        throw InvalidInput("fctb: frame payload does not fit in u32");
      }
      w.f32(frame.scale.global_min);
      w.f32(frame.scale.global_max);
      w.u32(static_cast<std::uint32_t>(frame.payload.size()));
      w.raw(frame.payload);
    }
  }
  return w.take();
}

ParsedStream parse_stream(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes, "fctb");
  ParsedStream stream;
  stream.header = parse_header(r);

  // Size sanity before any allocation scales with declared counts: every
  // period costs its HLS bytes, every frame at least a 12-byte preamble.
  const std::uint64_t period_count =
      (static_cast<std::uint64_t>(stream.header.frame_count) +
       stream.header.refresh_period - 1) /
      stream.header.refresh_period;
  const std::uint64_t min_remaining =
      period_count * period_hls_bytes(stream.header.channels) +
      static_cast<std::uint64_t>(stream.header.frame_count) * 12;
  if (r.remaining() < min_remaining) {
    r.fail("stream shorter than its declared structure");
  }

  const auto spans =
      period_boundaries(stream.header.frame_count, stream.header.refresh_period);
  const std::size_t mask_bytes = (stream.header.channels + 7) / 8;

  for (const PeriodSpan& span : spans) {
    const std::size_t enabled_at = r.offset();
    const std::uint8_t enabled_byte = r.u8("truncation flag");
    if (enabled_byte > 1) {
      r.fail_at("truncation flag must be 0 or 1", enabled_at);
    }
    const bool enabled = enabled_byte == 1;

    const std::size_t mask_at = r.offset();
    const auto mask_view = r.raw(mask_bytes, "activation bitmask");
    if (stream.header.channels % 8 != 0) {
      const std::uint8_t padding_mask = static_cast<std::uint8_t>(
          0xffu << (stream.header.channels % 8));
      if (mask_view[mask_bytes - 1] & padding_mask) {
        r.fail_at("activation bitmask padding bits set", mask_at + mask_bytes - 1);
      }
    }
    std::size_t active = 0;
    for (std::size_t i = 0; i < stream.header.channels; ++i) {
      active += (mask_view[i / 8] >> (i % 8)) & 1u;
    }
    if (active == 0) {
      r.fail_at("activation bitmask clears every channel", mask_at);
    }
    if (!enabled && active != stream.header.channels) {
      r.fail_at("truncation disabled but bitmask clears channels", mask_at);
    }
    ActiveChannelMask mask = unpack_mask_bits(mask_view, stream.header.channels);

    const std::size_t layout_at = r.offset();
    const std::uint16_t rows = r.u16("layout rows");
    const std::uint16_t cols = r.u16("layout cols");
    const FrameLayout expected =
        compute_layout(active, stream.header.tile_height, stream.header.tile_width);
    if (rows != expected.rows || cols != expected.cols) {
      r.fail_at("bitmask/layout inconsistency: " + std::to_string(active) +
                    " active channels need a " + std::to_string(expected.rows) +
                    "x" + std::to_string(expected.cols) + " grid",
                layout_at);
    }

    stream.periods.push_back(ParsedPeriod{enabled, std::move(mask), expected});

    std::vector<ParsedFrame> frames;
    frames.reserve(span.length);
    for (std::size_t f = 0; f < span.length; ++f) {
      ParsedFrame frame;
      const std::size_t scale_at = r.offset();
      frame.scale.global_min = r.f32("scale min");
      frame.scale.global_max = r.f32("scale max");
      if (!std::isfinite(frame.scale.global_min) ||
          !std::isfinite(frame.scale.global_max) ||
          frame.scale.global_min > frame.scale.global_max) {
        r.fail_at("invalid scale params", scale_at);
      }
      const std::size_t len_at = r.offset();
      const std::uint32_t payload_len = r.u32("payload length");
      if (payload_len > r.remaining()) {
        r.fail_at("truncated payload: " + std::to_string(payload_len) +
                      " bytes declared, " + std::to_string(r.remaining()) +
                      " available",
                  len_at);
      }
      const auto payload = r.raw(payload_len, "payload");
      frame.payload.assign(payload.begin(), payload.end());
      frames.push_back(std::move(frame));
    }
    stream.frames.push_back(std::move(frames));
  }
  r.expect_end();
  return stream;
}

std::vector<std::uint8_t> write_stream(const StreamHeader& header,
                                       std::span<const PeriodPlan> plans,
                                       std::span<const PackedFrame> packed_frames,
                                       const InnerCodec& codec) {
  validate_header_fields(header);
  if (codec.id() != header.inner_codec_id) {
    throw InvalidInput("fctb: header names codec id " +
                       std::to_string(header.inner_codec_id) + " but codec " +
                       std::to_string(codec.id()) + " was supplied");
  }
  if (packed_frames.size() != header.frame_count) {
    throw InvalidInput("fctb: packed frame count does not match header");
  }
  const auto spans = period_boundaries(header.frame_count, header.refresh_period);
  if (plans.size() != spans.size()) {
    throw InvalidInput("fctb: plan count does not match period count");
  }

  ParsedStream stream;
  stream.header = header;
  for (std::size_t p = 0; p < spans.size(); ++p) {
    const PeriodPlan& plan = plans[p];
    if (plan.period_index != p) {
      throw InvalidInput("fctb: plan order mismatch at period " + std::to_string(p));
    }
    if (plan.mask.size() != header.channels) {
      throw InvalidInput("fctb: plan mask does not cover the channel count");
    }
    if (p > 0 && plan.mask.active_count() > plans[0].mask.active_count()) {
      throw InvalidInput("fctb: period " + std::to_string(p) +
                         " retains more channels than period 0");
    }
    if (!plan.truncation_enabled && !plan.mask.all_set()) {
      throw InvalidInput("fctb: plan signals no truncation but masks channels");
    }

    const FrameLayout layout = compute_layout(
        plan.mask.active_count(), header.tile_height, header.tile_width);
    stream.periods.push_back(
        ParsedPeriod{plan.truncation_enabled, plan.mask, layout});

    std::vector<ParsedFrame> frames;
    frames.reserve(spans[p].length);
    for (std::size_t f = spans[p].start; f < spans[p].start + spans[p].length;
         ++f) {
      const PackedFrame& packed = packed_frames[f];
      if (packed.layout != layout) {
        throw InvalidInput("fctb: frame " + std::to_string(f) +
                           " was packed under a different layout");
      }
      if (packed.samples.size() != layout.sample_count()) {
        throw InvalidInput("fctb: frame " + std::to_string(f) +
                           " sample count does not match its layout");
      }
      frames.push_back(ParsedFrame{packed.scale, codec.encode(packed.samples)});
    }
    stream.frames.push_back(std::move(frames));
  }
  return serialize_stream(stream);
}

DecodedStream read_stream(std::span<const std::uint8_t> bytes,
                          const CodecRegistry& registry) {
  ParsedStream parsed = parse_stream(bytes);

  const InnerCodec* codec = registry.find(parsed.header.inner_codec_id);
  if (codec == nullptr) {
    // The codec id lives at the last header byte.
    throw ParseError("fctb: unknown inner codec id " +
                         std::to_string(parsed.header.inner_codec_id),
                     kStreamHeaderBytes - 1);
  }

  DecodedStream decoded;
  decoded.header = parsed.header;
  decoded.periods = parsed.periods;

  // Recompute payload offsets so codec errors point into the stream.
  std::size_t offset = kStreamHeaderBytes;
  for (std::size_t p = 0; p < parsed.periods.size(); ++p) {
    offset += period_hls_bytes(parsed.header.channels);
    const FrameLayout& layout = parsed.periods[p].layout;
    for (const ParsedFrame& frame : parsed.frames[p]) {
      offset += 12;  // scale_min, scale_max, payload_len
      auto samples =
          codec->decode(frame.payload, layout.sample_count(), offset);
      offset += frame.payload.size();
      decoded.frames.push_back(
          PackedFrame{layout, frame.scale, std::move(samples)});
    }
  }
  return decoded;
}

}  // namespace ftc
