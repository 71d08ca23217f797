#include "ftc/inner_codec.hpp"

#include <string>

namespace ftc {

namespace {

constexpr std::size_t kMaxRun = 65535;

void check_sample_values(std::span<const std::uint16_t> samples) {
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (samples[i] > 1023) {
      throw InvalidInput("inner codec: sample " + std::to_string(i) +
                         " exceeds 10 bits");
    }
  }
}

std::uint16_t requantize(std::uint16_t sample, unsigned step) {
  // round(s/step)*step, half away from zero, clamped to the 10-bit lattice.
  const unsigned rounded = (2u * sample + step) / (2u * step) * step;
  return static_cast<std::uint16_t>(rounded > 1023 ? 1023 : rounded);
}

}  // namespace

std::vector<std::uint8_t> RawCodec::encode(
    std::span<const std::uint16_t> samples) const {
  check_sample_values(samples);
  std::vector<std::uint8_t> out;
  out.reserve(samples.size() * 2);
  for (std::uint16_t s : samples) {
    out.push_back(static_cast<std::uint8_t>(s & 0xff));
    out.push_back(static_cast<std::uint8_t>(s >> 8));
  }
  return out;
}

std::vector<std::uint16_t> RawCodec::decode(std::span<const std::uint8_t> payload,
                                            std::size_t sample_count,
                                            std::size_t base_offset) const {
  if (payload.size() != sample_count * 2) {
    throw ParseError("raw codec: payload holds " +
                         std::to_string(payload.size() / 2) + " samples, expected " +
                         std::to_string(sample_count),
                     base_offset);
  }
  std::vector<std::uint16_t> samples(sample_count);
  for (std::size_t i = 0; i < sample_count; ++i) {
    const std::uint16_t v = static_cast<std::uint16_t>(payload[2 * i]) |
                            static_cast<std::uint16_t>(payload[2 * i + 1]) << 8;
    if (v > 1023) {
      throw ParseError("raw codec: sample top bits set", base_offset + 2 * i);
    }
    samples[i] = v;
  }
  return samples;
}

bool is_valid_qrle_step(unsigned step) {
  return step == 1 || step == 2 || step == 4 || step == 8 || step == 16 ||
         step == 32;
}

std::vector<std::uint8_t> qrle_encode(std::span<const std::uint16_t> samples,
                                      unsigned step) {
  if (!is_valid_qrle_step(step)) {
    throw InvalidInput("qrle: step must be one of {1,2,4,8,16,32}, got " +
                       std::to_string(step));
  }
  check_sample_values(samples);

  std::vector<std::uint8_t> out;
  std::size_t i = 0;
  while (i < samples.size()) {
    const std::uint16_t value = requantize(samples[i], step);
    std::size_t run = 1;
    while (i + run < samples.size() && run < kMaxRun &&
           requantize(samples[i + run], step) == value) {
      ++run;
    }
    out.push_back(static_cast<std::uint8_t>(value & 0xff));
    out.push_back(static_cast<std::uint8_t>(value >> 8));
    out.push_back(static_cast<std::uint8_t>(run & 0xff));
    out.push_back(static_cast<std::uint8_t>(run >> 8));
    i += run;
  }
  return out;
}

std::vector<std::uint16_t> qrle_decode(std::span<const std::uint8_t> payload,
                                       std::size_t sample_count, unsigned step,
                                       std::size_t base_offset) {
  if (!is_valid_qrle_step(step)) {
    throw InvalidInput("qrle: step must be one of {1,2,4,8,16,32}, got " +
                       std::to_string(step));
  }
  if (payload.size() % 4 != 0) {
    throw ParseError("qrle: payload length is not a multiple of 4",
                     base_offset + payload.size() - payload.size() % 4);
  }

  std::vector<std::uint16_t> samples;
  samples.reserve(sample_count);
  for (std::size_t p = 0; p < payload.size(); p += 4) {
    const std::uint16_t value = static_cast<std::uint16_t>(payload[p]) |
                                static_cast<std::uint16_t>(payload[p + 1]) << 8;
    const std::size_t run = static_cast<std::size_t>(payload[p + 2]) |
                            static_cast<std::size_t>(payload[p + 3]) << 8;
    if (value > 1023) {
      throw ParseError("qrle: sample top bits set", base_offset + p);
    }
    if (value % step != 0 && value != 1023) {
      // 1023 is the clamp point of the requantizer and is always admissible.
      throw ParseError("qrle: sample off the step-" + std::to_string(step) +
                           " lattice",
                       base_offset + p);
    }
    if (run == 0) {
      throw ParseError("qrle: zero run length", base_offset + p + 2);
    }
    if (samples.size() + run > sample_count) {
      throw ParseError("qrle: decoded length exceeds " +
                           std::to_string(sample_count) + " samples",
                       base_offset + p);
    }
    samples.insert(samples.end(), run, value);
  }
  if (samples.size() != sample_count) {
    throw ParseError("qrle: decoded " + std::to_string(samples.size()) +
                         " samples, expected " + std::to_string(sample_count),
                     base_offset + payload.size());
  }
  return samples;
}

QrleCodec::QrleCodec(unsigned step) : step_(step) {
  if (!is_valid_qrle_step(step)) {
    throw InvalidInput("qrle: step must be one of {1,2,4,8,16,32}, got " +
                       std::to_string(step));
  }
}

std::vector<std::uint8_t> QrleCodec::encode(
    std::span<const std::uint16_t> samples) const {
  return qrle_encode(samples, step_);
}

std::vector<std::uint16_t> QrleCodec::decode(std::span<const std::uint8_t> payload,
                                             std::size_t sample_count,
                                             std::size_t base_offset) const {
  return qrle_decode(payload, sample_count, step_, base_offset);
}

CodecRegistry& CodecRegistry::add(std::shared_ptr<const InnerCodec> codec) {
  for (auto& existing : codecs_) {
    if (existing->id() == codec->id()) {
      existing = std::move(codec);
      return *this;
    }
  }
  codecs_.push_back(std::move(codec));
  return *this;
}

const InnerCodec* CodecRegistry::find(std::uint8_t id) const noexcept {
  for (const auto& codec : codecs_) {
    if (codec->id() == id) return codec.get();
  }
  return nullptr;
}

CodecRegistry CodecRegistry::with_defaults(unsigned qrle_step) {
  CodecRegistry registry;
  registry.add(std::make_shared<RawCodec>());
  registry.add(std::make_shared<QrleCodec>(qrle_step));
  return registry;
}

}  // namespace ftc
