#include "ftc/packing.hpp"

#include <cmath>
#include <string>

namespace ftc {

FrameLayout compute_layout(std::size_t n_tiles, std::size_t tile_height,
                           std::size_t tile_width) {
  if (n_tiles == 0) throw InvalidInput("layout: tile count must be >= 1");
  if (tile_height == 0 || tile_width == 0) {
    throw InvalidInput("layout: tile dimensions must be >= 1");
  }
  // cols = ceil(sqrt(n_tiles)) via integer search, immune to float sqrt.
  std::size_t cols = 1;
  while (cols * cols < n_tiles) ++cols;
  const std::size_t rows = (n_tiles + cols - 1) / cols;
  return FrameLayout{rows, cols, tile_height, tile_width};
}

std::uint16_t quantize(float value, const ScaleParams& scale) {
  if (scale.global_max == scale.global_min) return kPadSample;
  const double span = static_cast<double>(scale.global_max) -
                      static_cast<double>(scale.global_min);
  const double scaled =
      (static_cast<double>(value) - static_cast<double>(scale.global_min)) /
      span * 1023.0;
  double rounded = std::round(scaled);  // half away from zero
  if (rounded < 0.0) rounded = 0.0;
  if (rounded > 1023.0) rounded = 1023.0;
  return static_cast<std::uint16_t>(rounded);
}

float dequantize(std::uint16_t sample, const ScaleParams& scale) {
  const double span = static_cast<double>(scale.global_max) -
                      static_cast<double>(scale.global_min);
  return static_cast<float>(static_cast<double>(scale.global_min) +
                            static_cast<double>(sample) / 1023.0 * span);
}

PackedFrame pack(const FeatureTensor& tensor, const ActiveChannelMask& mask) {
  if (mask.size() != tensor.channels()) {
    throw InvalidInput("pack: mask covers " + std::to_string(mask.size()) +
                       " channels, tensor has " +
                       std::to_string(tensor.channels()));
  }

  // Scale over active channels only.
  bool first = true;
  float lo = 0.0f;
  float hi = 0.0f;
  for (std::size_t c = 0; c < tensor.channels(); ++c) {
    if (!mask.is_active(c)) continue;
    for (float v : tensor.channel(c)) {
      if (first) {
        lo = hi = v;
        first = false;
      } else {
        if (v < lo) lo = v;
        if (v > hi) hi = v;
      }
    }
  }
  const ScaleParams scale{lo, hi};

  const FrameLayout layout =
      compute_layout(mask.active_count(), tensor.height(), tensor.width());
  std::vector<std::uint16_t> samples(layout.sample_count(), kPadSample);

  const std::size_t frame_width = layout.frame_width();
  std::size_t tile = 0;
  for (std::size_t c = 0; c < tensor.channels(); ++c) {
    if (!mask.is_active(c)) continue;
    const std::size_t tile_row = tile / layout.cols;
    const std::size_t tile_col = tile % layout.cols;
    const auto values = tensor.channel(c);
    for (std::size_t y = 0; y < tensor.height(); ++y) {
      const std::size_t row_base =
          (tile_row * tensor.height() + y) * frame_width +
          tile_col * tensor.width();
      for (std::size_t x = 0; x < tensor.width(); ++x) {
        samples[row_base + x] = quantize(values[y * tensor.width() + x], scale);
      }
    }
    ++tile;
  }
  return PackedFrame{layout, scale, std::move(samples)};
}

FeatureTensor unpack(const PackedFrame& frame, const ActiveChannelMask& mask) {
  const FrameLayout& layout = frame.layout;
  if (layout.tile_count() < mask.active_count()) {
    throw InvalidInput("unpack: layout/mask mismatch, " +
                       std::to_string(layout.tile_count()) + " tiles for " +
                       std::to_string(mask.active_count()) + " active channels");
  }
  if (frame.samples.size() != layout.sample_count()) {
    throw InvalidInput("unpack: sample buffer does not match layout");
  }

  const std::size_t height = layout.tile_height;
  const std::size_t width = layout.tile_width;
  const std::size_t frame_width = layout.frame_width();
  const std::size_t channels = mask.size();

  std::vector<float> data(channels * height * width, 0.0f);
  double sum = 0.0;  // mean of decoded active samples, accumulated in order

  std::size_t tile = 0;
  for (std::size_t c = 0; c < channels; ++c) {
    if (!mask.is_active(c)) continue;
    const std::size_t tile_row = tile / layout.cols;
    const std::size_t tile_col = tile % layout.cols;
    float* out = data.data() + c * height * width;
    for (std::size_t y = 0; y < height; ++y) {
      const std::size_t row_base =
          (tile_row * height + y) * frame_width + tile_col * width;
      for (std::size_t x = 0; x < width; ++x) {
        const float v = dequantize(frame.samples[row_base + x], frame.scale);
        out[y * width + x] = v;
        sum += static_cast<double>(v);
      }
    }
    ++tile;
  }

  const float fill = static_cast<float>(
      sum / static_cast<double>(mask.active_count() * height * width));
  for (std::size_t c = 0; c < channels; ++c) {
    if (mask.is_active(c)) continue;
    float* out = data.data() + c * height * width;
    std::fill(out, out + height * width, fill);
  }
  return FeatureTensor(channels, height, width, std::move(data));
}

}  // namespace ftc
