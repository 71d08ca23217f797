#include "ftc/truncation.hpp"

#include <algorithm>
#include <numeric>

namespace ftc {

AlphaRatio::AlphaRatio(std::uint16_t num, std::uint16_t den)
    : num_(num), den_(den) {
  if (num_ == 0 || num_ >= den_) {
    throw InvalidInput("alpha must satisfy 0 < num/den < 1, got " +
                       std::to_string(num_) + "/" + std::to_string(den_));
  }
}

std::string AlphaRatio::str() const {
  return std::to_string(num_) + "/" + std::to_string(den_);
}

ActiveChannelMask::ActiveChannelMask(std::vector<bool> bits)
    : bits_(std::move(bits)) {
  if (bits_.empty()) {
    throw InvalidInput("channel mask: channel count must be >= 1");
  }
  active_count_ = static_cast<std::size_t>(
      std::count(bits_.begin(), bits_.end(), true));
  if (active_count_ == 0) {
    throw InvalidInput("channel mask: at least one channel must stay active");
  }
}

ActiveChannelMask ActiveChannelMask::all_active(std::size_t channels) {
  return ActiveChannelMask(std::vector<bool>(channels, true));
}

std::vector<std::size_t> ActiveChannelMask::active_indices() const {
  std::vector<std::size_t> indices;
  indices.reserve(active_count_);
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i]) indices.push_back(i);
  }
  return indices;
}

float compute_threshold(std::span<const float> ranges, AlphaRatio alpha) {
  if (ranges.empty()) {
    throw InvalidInput("threshold: range list must be non-empty");
  }
  double sum = 0.0;
  for (float r : ranges) {
    if (!(r >= 0.0f)) {
      throw InvalidInput("threshold: ranges must be >= 0");
    }
    sum += static_cast<double>(r);
  }
  const double denom = static_cast<double>(alpha.den()) *
                       static_cast<double>(ranges.size());
  return static_cast<float>(static_cast<double>(alpha.num()) * sum / denom);
}

ActiveChannelMask classify_channels(std::span<const float> ranges,
                                    float threshold) {
  if (!(threshold >= 0.0f)) {
    throw InvalidInput("classify: threshold must be >= 0");
  }
  std::vector<bool> bits(ranges.size());
  for (std::size_t i = 0; i < ranges.size(); ++i) {
    bits[i] = ranges[i] >= threshold;  // strictly below means inactive
  }
  return ActiveChannelMask(std::move(bits));
}

PeriodPlan plan_period(const FeatureTensor& first_frame,
                       const CutoffConfig& config,
                       std::optional<std::size_t> capacity,
                       std::size_t period_index) {
  if (capacity.has_value() != (period_index > 0)) {
    throw InvalidInput(
        "plan_period: capacity must be absent for period 0 and present after");
  }
  const auto ranges = channel_ranges(first_frame);
  const float threshold = compute_threshold(ranges, config.alpha);
  ActiveChannelMask mask = classify_channels(ranges, threshold);

  if (capacity && mask.active_count() > *capacity) {
    // The retained count may not exceed period 0's. Keep the top-capacity
    // channels by range; ties go to the lower channel index.
    auto candidates = mask.active_indices();
    std::stable_sort(candidates.begin(), candidates.end(),
                     [&](std::size_t a, std::size_t b) {
                       return ranges[a] > ranges[b];
                     });
    candidates.resize(*capacity);
    std::vector<bool> bits(ranges.size(), false);
    for (std::size_t i : candidates) bits[i] = true;
    mask = ActiveChannelMask(std::move(bits));
  }

  const bool enabled = mask.active_count() != mask.size();
  return PeriodPlan{period_index, std::move(mask), enabled};
}

std::vector<PeriodSpan> period_boundaries(std::size_t frame_count,
                                          std::size_t refresh_period) {
  if (frame_count == 0) {
    throw InvalidInput("period boundaries: frame count must be >= 1");
  }
  if (refresh_period == 0) {
    throw InvalidInput("period boundaries: refresh period must be >= 1");
  }
  std::vector<PeriodSpan> spans;
  for (std::size_t start = 0; start < frame_count; start += refresh_period) {
    spans.push_back(PeriodSpan{start, std::min(refresh_period, frame_count - start)});
  }
  return spans;
}

}  // namespace ftc
