#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ftc/tensor.hpp"

namespace ftc {

/// Truncation strength as an exact rational in (0, 1). Carrying the exact
/// numerator/denominator keeps threshold arithmetic reproducible across
/// platforms; mask decisions near the threshold must not drift with rounding.
class AlphaRatio {
 public:
  AlphaRatio() : AlphaRatio(2, 3) {}
  AlphaRatio(std::uint16_t num, std::uint16_t den);

  std::uint16_t num() const noexcept { return num_; }
  std::uint16_t den() const noexcept { return den_; }
  double value() const noexcept { return static_cast<double>(num_) / den_; }
  std::string str() const;

  bool operator==(const AlphaRatio&) const = default;

 private:
  std::uint16_t num_;
  std::uint16_t den_;
};

struct CutoffConfig {
  AlphaRatio alpha{};                  // default 2/3
  std::uint32_t refresh_period = 128;  // frames per mask refresh
};

/// Per-period transmission mask. At least one channel is always active:
/// with alpha < 1 the max-range channel sits above the threshold, and an
/// all-zero-range tensor classifies fully active under the strict-below rule.
class ActiveChannelMask {
 public:
  explicit ActiveChannelMask(std::vector<bool> bits);
  static ActiveChannelMask all_active(std::size_t channels);

  std::size_t size() const noexcept { return bits_.size(); }
  std::size_t active_count() const noexcept { return active_count_; }
  bool is_active(std::size_t channel) const { return bits_.at(channel); }
  bool all_set() const noexcept { return active_count_ == bits_.size(); }
  const std::vector<bool>& bits() const noexcept { return bits_; }
  std::vector<std::size_t> active_indices() const;

  bool operator==(const ActiveChannelMask&) const = default;

 private:
  std::vector<bool> bits_;
  std::size_t active_count_;
};

struct PeriodPlan {
  std::size_t period_index = 0;
  ActiveChannelMask mask;
  bool truncation_enabled = false;
};

/// alpha * mean(ranges), evaluated as alpha_num * sum / (alpha_den * N) with
/// 64-bit accumulation, rounded once to 32-bit at the end.
float compute_threshold(std::span<const float> ranges, AlphaRatio alpha);

/// Bit i set iff ranges[i] >= threshold. A range exactly at the threshold is
/// active ("below" is strict), which keeps degenerate all-zero tensors
/// untruncated.
ActiveChannelMask classify_channels(std::span<const float> ranges,
                                    float threshold);

/// Computes stats -> threshold -> mask on a period's first frame. When a
/// capacity is given (the period-0 active count) and more channels qualify,
/// only the top-capacity channels by range are retained, ties broken toward
/// the lower channel index. truncation_enabled reflects the final mask:
/// false iff every channel stays active.
PeriodPlan plan_period(const FeatureTensor& first_frame,
                       const CutoffConfig& config,
                       std::optional<std::size_t> capacity = std::nullopt,
                       std::size_t period_index = 0);

struct PeriodSpan {
  std::size_t start;
  std::size_t length;

  bool operator==(const PeriodSpan&) const = default;
};

/// Consecutive half-open intervals of refresh_period frames, last possibly
/// shorter.
std::vector<PeriodSpan> period_boundaries(std::size_t frame_count,
                                          std::size_t refresh_period);

}  // namespace ftc
