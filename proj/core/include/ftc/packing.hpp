#pragma once

#include <cstdint>
#include <vector>

#include "ftc/tensor.hpp"
#include "ftc/truncation.hpp"

namespace ftc {

inline constexpr std::uint16_t kMaxSample = 1023;  // 10-bit samples
inline constexpr std::uint16_t kPadSample = 512;   // mid-scale, DC-flat padding

/// Near-square tile grid holding one quantized channel per tile.
struct FrameLayout {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t tile_height = 0;
  std::size_t tile_width = 0;

  std::size_t tile_count() const noexcept { return rows * cols; }
  std::size_t frame_height() const noexcept { return rows * tile_height; }
  std::size_t frame_width() const noexcept { return cols * tile_width; }
  std::size_t sample_count() const noexcept {
    return frame_height() * frame_width();
  }

  bool operator==(const FrameLayout&) const = default;
};

/// cols = ceil(sqrt(n_tiles)), rows = ceil(n_tiles / cols).
FrameLayout compute_layout(std::size_t n_tiles, std::size_t tile_height,
                           std::size_t tile_width);

/// One (min, max) pair per frame, taken over the frame's active channels
/// only. Truncating noisy channels tightens this range, which is a second,
/// implicit fidelity gain of truncation.
struct ScaleParams {
  float global_min = 0.0f;
  float global_max = 0.0f;

  bool operator==(const ScaleParams&) const = default;
};

/// round((value - min)/(max - min) * 1023), half away from zero, clamped to
/// [0, 1023]. A degenerate scale (max == min) maps everything to 512.
std::uint16_t quantize(float value, const ScaleParams& scale);

/// min + sample/1023 * (max - min).
float dequantize(std::uint16_t sample, const ScaleParams& scale);

struct PackedFrame {
  FrameLayout layout;
  ScaleParams scale;
  std::vector<std::uint16_t> samples;  // layout.sample_count() 10-bit values

  bool operator==(const PackedFrame&) const = default;
};

/// Places active channels in ascending channel-index order, row-major over
/// the tile grid. Tiles past the last placed channel hold kPadSample.
PackedFrame pack(const FeatureTensor& tensor, const ActiveChannelMask& mask);

/// Inverts pack: active channels are dequantized back into their original
/// indices; every truncated channel becomes a flat channel holding the
/// arithmetic mean of all samples of all decoded active channels in this
/// frame (accumulated in channel-index order, 64-bit, rounded once to float).
FeatureTensor unpack(const PackedFrame& frame, const ActiveChannelMask& mask);

}  // namespace ftc
