#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ftc/tensor.hpp"

namespace ftc {

struct RatePoint {
  double rate = 0.0;      // bits
  double accuracy = 0.0;  // unitless task score

  bool operator==(const RatePoint&) const = default;
};

/// At least four points with strictly positive, strictly increasing rates
/// and finite accuracies.
class RateAccuracyCurve {
 public:
  explicit RateAccuracyCurve(std::vector<RatePoint> points);

  const std::vector<RatePoint>& points() const noexcept { return points_; }
  double min_accuracy() const;
  double max_accuracy() const;

  bool operator==(const RateAccuracyCurve&) const = default;

 private:
  std::vector<RatePoint> points_;
};

/// Classic Bjontegaard delta rate, in percent. Fits log10(rate) as a cubic
/// in accuracy for each curve (exact interpolation at four points, least
/// squares beyond), integrates the difference analytically over the curves'
/// overlapping accuracy interval, and returns (10^avg - 1) * 100. Negative
/// means the test curve spends less rate at equal accuracy.
double bd_rate(const RateAccuracyCurve& anchor, const RateAccuracyCurve& test);

struct BitrateReport {
  std::uint64_t total_bits = 0;
  double bits_per_frame = 0.0;
  std::optional<double> bits_per_second;
};

BitrateReport bitrate_of_stream(
    std::size_t byte_count, std::size_t frame_count,
    std::optional<double> frames_per_second = std::nullopt);

/// Proxy distortion between an original sequence and its reconstruction.
/// flat_channel[i] is true iff channel i has zero range in every
/// reconstructed frame, which is exactly what mean-fill produces.
struct DistortionReport {
  std::vector<double> channel_mse;
  double overall_mse = 0.0;
  double max_abs_error = 0.0;
  std::vector<bool> flat_channel;
};

DistortionReport distortion(const FeatureTensorSequence& original,
                            const FeatureTensorSequence& reconstructed);

// Two-column curve text format: header line "rate,accuracy", then one
// "rate,accuracy" point per line in decimal notation.
RateAccuracyCurve read_curve_csv(const std::string& text);
std::string write_curve_csv(const RateAccuracyCurve& curve);
RateAccuracyCurve load_curve_csv(const std::filesystem::path& path);
void save_curve_csv(const RateAccuracyCurve& curve,
                    const std::filesystem::path& path);

}  // namespace ftc
