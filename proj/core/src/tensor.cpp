#include "ftc/tensor.hpp"

#include <cmath>
#include <string>

namespace ftc {

FeatureTensor::FeatureTensor(std::size_t channels, std::size_t height,
                             std::size_t width, std::vector<float> data)
    : channels_(channels),
      height_(height),
      width_(width),
      data_(std::move(data)) {
  if (channels_ == 0 || height_ == 0 || width_ == 0) {
    throw InvalidInput("feature tensor: dimensions must be >= 1");
  }
  const std::size_t expected = channels_ * height_ * width_;
  if (data_.size() != expected) {
    throw InvalidInput("feature tensor: data length " +
                       std::to_string(data_.size()) + " does not equal C*H*W = " +
                       std::to_string(expected));
  }
  for (std::size_t i = 0; i < data_.size(); ++i) {
    if (!std::isfinite(data_[i])) {
      throw InvalidInput("feature tensor: non-finite value at index " +
                         std::to_string(i));
    }
  }
}

std::span<const float> FeatureTensor::channel(std::size_t c) const {
  if (c >= channels_) {
    throw InvalidInput("feature tensor: channel index " + std::to_string(c) +
                       " out of range");
  }
  return std::span<const float>(data_).subspan(c * channel_size(),
                                               channel_size());
}

FeatureTensorSequence::FeatureTensorSequence(std::vector<FeatureTensor> frames)
    : frames_(std::move(frames)) {
  if (frames_.empty()) {
    throw InvalidInput("feature tensor sequence: frame count must be >= 1");
  }
  const auto& first = frames_.front();
  for (std::size_t i = 1; i < frames_.size(); ++i) {
    const auto& f = frames_[i];
    if (f.channels() != first.channels() || f.height() != first.height() ||
        f.width() != first.width()) {
      throw InvalidInput("feature tensor sequence: frame " + std::to_string(i) +
                         " does not match the sequence shape");
    }
  }
}

std::vector<ChannelStats> channel_stats(const FeatureTensor& tensor) {
  std::vector<ChannelStats> stats;
  stats.reserve(tensor.channels());
  for (std::size_t c = 0; c < tensor.channels(); ++c) {
    const auto values = tensor.channel(c);
    float lo = values[0];
    float hi = values[0];
    for (float v : values) {
      if (v < lo) lo = v;
      if (v > hi) hi = v;
    }
    stats.push_back(ChannelStats{c, lo, hi, hi - lo});
  }
  return stats;
}

std::vector<float> channel_ranges(const FeatureTensor& tensor) {
  std::vector<float> ranges;
  ranges.reserve(tensor.channels());
  for (const auto& s : channel_stats(tensor)) ranges.push_back(s.range);
  return ranges;
}

}  // namespace ftc
