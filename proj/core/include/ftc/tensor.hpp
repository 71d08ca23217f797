#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ftc/error.hpp"

namespace ftc {

/// One multi-channel activation frame. Values are stored channel-major, then
/// row-major within each channel. All values must be finite; construction
/// rejects NaN and infinity rather than sanitizing them, since silent
/// sanitization would corrupt range statistics downstream.
class FeatureTensor {
 public:
  FeatureTensor(std::size_t channels, std::size_t height, std::size_t width,
                std::vector<float> data);

  std::size_t channels() const noexcept { return channels_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t width() const noexcept { return width_; }
  std::size_t channel_size() const noexcept { return height_ * width_; }
  std::size_t value_count() const noexcept { return data_.size(); }

  std::span<const float> data() const noexcept { return data_; }
  std::span<const float> channel(std::size_t c) const;

  float at(std::size_t c, std::size_t y, std::size_t x) const {
    return data_[(c * height_ + y) * width_ + x];
  }

  bool operator==(const FeatureTensor&) const = default;

 private:
  std::size_t channels_;
  std::size_t height_;
  std::size_t width_;
  std::vector<float> data_;
};

/// Ordered frames sharing one (C, H, W) shape. Never empty.
class FeatureTensorSequence {
 public:
  explicit FeatureTensorSequence(std::vector<FeatureTensor> frames);

  const std::vector<FeatureTensor>& frames() const noexcept { return frames_; }
  const FeatureTensor& frame(std::size_t i) const { return frames_.at(i); }

  std::size_t frame_count() const noexcept { return frames_.size(); }
  std::size_t channels() const noexcept { return frames_.front().channels(); }
  std::size_t height() const noexcept { return frames_.front().height(); }
  std::size_t width() const noexcept { return frames_.front().width(); }

  bool operator==(const FeatureTensorSequence&) const = default;

 private:
  std::vector<FeatureTensor> frames_;
};

struct ChannelStats {
  std::size_t channel_index;
  float min;
  float max;
  float range;  // max - min

  bool operator==(const ChannelStats&) const = default;
};

/// Exact per-channel min/max/range in channel order. Pure 32-bit float
/// arithmetic, no extended precision, so results are identical across
/// platforms and independent of any future parallelization.
std::vector<ChannelStats> channel_stats(const FeatureTensor& tensor);

/// The ranges alone, in channel order.
std::vector<float> channel_ranges(const FeatureTensor& tensor);

}  // namespace ftc
