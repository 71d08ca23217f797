#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "ftc/error.hpp"

namespace ftc {

inline constexpr std::uint8_t kRawCodecId = 0;
inline constexpr std::uint8_t kQrleCodecId = 1;

/// Frame-level compressor boundary. A real deployment would put a video
/// codec here; the two reference codecs keep the boundary honest without
/// one. decode(encode(x)) is defined for every valid sample array.
class InnerCodec {
 public:
  virtual ~InnerCodec() = default;

  virtual std::uint8_t id() const noexcept = 0;
  virtual std::string_view name() const noexcept = 0;

  /// samples are 10-bit values (<= 1023).
  virtual std::vector<std::uint8_t> encode(
      std::span<const std::uint16_t> samples) const = 0;

  /// base_offset is the payload's position in the enclosing stream and is
  /// only used to locate parse errors.
  virtual std::vector<std::uint16_t> decode(std::span<const std::uint8_t> payload,
                                            std::size_t sample_count,
                                            std::size_t base_offset) const = 0;
};

/// Codec 0: each sample as little-endian u16 with the top 6 bits zero
/// (checked on read). Lossless.
class RawCodec final : public InnerCodec {
 public:
  std::uint8_t id() const noexcept override { return kRawCodecId; }
  std::string_view name() const noexcept override { return "raw"; }
  std::vector<std::uint8_t> encode(
      std::span<const std::uint16_t> samples) const override;
  std::vector<std::uint16_t> decode(std::span<const std::uint8_t> payload,
                                    std::size_t sample_count,
                                    std::size_t base_offset) const override;
};

/// Steps of the reference rate ladder.
bool is_valid_qrle_step(unsigned step);

/// Requantizes each sample to round(s/step)*step clamped to [0, 1023], then
/// run-length codes the result as (value u16, run u16) pairs, splitting runs
/// longer than 65535. Per-sample error is at most step/2.
std::vector<std::uint8_t> qrle_encode(std::span<const std::uint16_t> samples,
                                      unsigned step);

/// Expands the pairs and checks the decoded length. When step is known it
/// also checks each value sits on the requantization lattice (a clamped
/// value of 1023 is always admissible).
std::vector<std::uint16_t> qrle_decode(std::span<const std::uint8_t> payload,
                                       std::size_t sample_count, unsigned step,
                                       std::size_t base_offset = 0);

/// Codec 1: uniform requantization with a fixed step followed by run-length
/// coding. Lossy for step > 1; step 1 is lossless.
class QrleCodec final : public InnerCodec {
 public:
  explicit QrleCodec(unsigned step = 1);

  unsigned step() const noexcept { return step_; }
  std::uint8_t id() const noexcept override { return kQrleCodecId; }
  std::string_view name() const noexcept override { return "qrle"; }
  std::vector<std::uint8_t> encode(
      std::span<const std::uint16_t> samples) const override;
  std::vector<std::uint16_t> decode(std::span<const std::uint8_t> payload,
                                    std::size_t sample_count,
                                    std::size_t base_offset) const override;

 private:
  unsigned step_;
};

/// Decoder-side codec lookup by header id.
class CodecRegistry {
 public:
  CodecRegistry& add(std::shared_ptr<const InnerCodec> codec);
  const InnerCodec* find(std::uint8_t id) const noexcept;

  /// RAW plus QRLE. The QRLE step only matters for re-encoding and lattice
  /// validation; expansion itself is step-independent, so a decoder that
  /// does not know the encoder's step registers step 1.
  static CodecRegistry with_defaults(unsigned qrle_step = 1);

 private:
  std::vector<std::shared_ptr<const InnerCodec>> codecs_;
};

}  // namespace ftc
