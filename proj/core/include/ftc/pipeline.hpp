#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ftc/bitstream.hpp"
#include "ftc/tensor.hpp"
#include "ftc/truncation.hpp"

namespace ftc {

struct EncodeConfig {
  CutoffConfig cutoff{};
  /// false forces the full-channel path: every period keeps all channels and
  /// signals truncation_enabled = 0, identical to what the encoder emits on
  /// its own when no channel falls below the threshold.
  bool truncation = true;
};

struct PeriodSummary {
  std::size_t period_index = 0;
  std::size_t start_frame = 0;
  std::size_t frame_count = 0;
  std::size_t active_count = 0;
  bool truncation_enabled = false;
  FrameLayout layout;
};

struct EncodeResult {
  std::vector<std::uint8_t> bytes;
  StreamHeader header;
  std::vector<PeriodSummary> periods;

  std::size_t total_bits() const noexcept { return bytes.size() * 8; }
  std::size_t hls_bytes() const noexcept {
    return periods.size() * period_hls_bytes(header.channels);
  }
};

/// Full encode path: period planning on each period's first frame, packing
/// every frame under its period's frozen mask, then bit-exact serialization
/// through the given inner codec.
EncodeResult encode_sequence(const FeatureTensorSequence& seq,
                             const EncodeConfig& config,
                             const InnerCodec& codec);

/// Full decode path. The reconstruction always restores the original channel
/// count; truncated channels come back as flat channels at the decoded-active
/// mean of their frame.
FeatureTensorSequence decode_sequence(std::span<const std::uint8_t> bytes,
                                      const CodecRegistry& registry);

}  // namespace ftc
