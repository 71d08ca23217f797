#include "ftc/metrics.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace ftc {

RateAccuracyCurve::RateAccuracyCurve(std::vector<RatePoint> points)
    : points_(std::move(points)) {
  if (points_.size() < 4) {
    throw InvalidInput("curve: at least 4 rate points required, got " +
                       std::to_string(points_.size()));
  }
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!(points_[i].rate > 0.0) || !std::isfinite(points_[i].rate)) {
      throw InvalidInput("curve: rates must be finite and > 0");
    }
    if (!std::isfinite(points_[i].accuracy)) {
      throw InvalidInput("curve: accuracies must be finite");
    }
    if (i > 0 && !(points_[i].rate > points_[i - 1].rate)) {
      throw InvalidInput("curve: rates must be strictly increasing");
    }
  }
}

double RateAccuracyCurve::min_accuracy() const {
  double lo = points_.front().accuracy;
  for (const auto& p : points_) lo = std::min(lo, p.accuracy);
  return lo;
}

double RateAccuracyCurve::max_accuracy() const {
  double hi = points_.front().accuracy;
  for (const auto& p : points_) hi = std::max(hi, p.accuracy);
  return hi;
}

namespace {

// Least-squares cubic of log10(rate) against the normalized accuracy
// s = (accuracy - center) / half_width. Fitting in s keeps the normal
// equations well conditioned and makes the result exactly invariant under
// shifting both curves' accuracies.
std::array<double, 4> fit_log_rate_cubic(const RateAccuracyCurve& curve,
                                         double center, double half_width) {
  double a[4][4] = {};
  double b[4] = {};
  for (const RatePoint& p : curve.points()) {
    const double s = (p.accuracy - center) / half_width;
    const double y = std::log10(p.rate);
    double powers[7];
    powers[0] = 1.0;
    for (int k = 1; k < 7; ++k) powers[k] = powers[k - 1] * s;
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) a[i][j] += powers[i + j];
      b[i] += powers[i] * y;
    }
  }

  // Gaussian elimination with partial pivoting on the 4x4 system.
  int perm[4] = {0, 1, 2, 3};
  for (int col = 0; col < 4; ++col) {
    int pivot = col;
    for (int row = col + 1; row < 4; ++row) {
      if (std::fabs(a[perm[row]][col]) > std::fabs(a[perm[pivot]][col])) {
        pivot = row;
      }
    }
    std::swap(perm[col], perm[pivot]);
    const double diag = a[perm[col]][col];
    if (std::fabs(diag) < 1e-12) {
      throw InvalidInput(
          "bd_rate: accuracy values are too degenerate for a cubic fit");
    }
    for (int row = col + 1; row < 4; ++row) {
      const double factor = a[perm[row]][col] / diag;
      for (int k = col; k < 4; ++k) a[perm[row]][k] -= factor * a[perm[col]][k];
      b[perm[row]] -= factor * b[perm[col]];
    }
  }
  std::array<double, 4> coeffs{};
  for (int col = 3; col >= 0; --col) {
    double v = b[perm[col]];
    for (int k = col + 1; k < 4; ++k) v -= a[perm[col]][k] * coeffs[k];
    coeffs[col] = v / a[perm[col]][col];
  }
  return coeffs;
}

// Exact antiderivative of the fitted cubic over [s0, s1].
double integrate_cubic(const std::array<double, 4>& c, double s0, double s1) {
  auto antiderivative = [&](double s) {
    return s * (c[0] + s * (c[1] / 2.0 + s * (c[2] / 3.0 + s * c[3] / 4.0)));
  };
  return antiderivative(s1) - antiderivative(s0);
}

}  // namespace

double bd_rate(const RateAccuracyCurve& anchor, const RateAccuracyCurve& test) {
  const double lo = std::max(anchor.min_accuracy(), test.min_accuracy());
  const double hi = std::min(anchor.max_accuracy(), test.max_accuracy());
  if (!(hi > lo)) {
    throw InvalidInput("bd_rate: curves share no accuracy overlap");
  }
  const double center = 0.5 * (lo + hi);
  const double half_width = 0.5 * (hi - lo);

  const auto anchor_fit = fit_log_rate_cubic(anchor, center, half_width);
  const auto test_fit = fit_log_rate_cubic(test, center, half_width);

  // The overlap maps to s in [-1, 1]; the average log-rate difference over
  // the interval is the integral of the coefficient difference over 2.
  const double anchor_integral = integrate_cubic(anchor_fit, -1.0, 1.0);
  const double test_integral = integrate_cubic(test_fit, -1.0, 1.0);
  const double avg_log_diff = (test_integral - anchor_integral) / 2.0;

  return (std::pow(10.0, avg_log_diff) - 1.0) * 100.0;
}

BitrateReport bitrate_of_stream(std::size_t byte_count, std::size_t frame_count,
                                std::optional<double> frames_per_second) {
  if (frame_count == 0) {
    throw InvalidInput("bitrate: frame count must be >= 1");
  }
  BitrateReport report;
  report.total_bits = static_cast<std::uint64_t>(byte_count) * 8;
  report.bits_per_frame =
      static_cast<double>(report.total_bits) / static_cast<double>(frame_count);
  if (frames_per_second) {
    if (!(*frames_per_second > 0.0)) {
      throw InvalidInput("bitrate: frames per second must be > 0");
    }
    report.bits_per_second = report.bits_per_frame * *frames_per_second;
  }
  return report;
}

DistortionReport distortion(const FeatureTensorSequence& original,
                            const FeatureTensorSequence& reconstructed) {
  if (original.frame_count() != reconstructed.frame_count() ||
      original.channels() != reconstructed.channels() ||
      original.height() != reconstructed.height() ||
      original.width() != reconstructed.width()) {
    throw InvalidInput("distortion: sequences must share one shape");
  }

  const std::size_t channels = original.channels();
  const std::size_t channel_size = original.height() * original.width();

  DistortionReport report;
  report.channel_mse.assign(channels, 0.0);
  report.flat_channel.assign(channels, true);

  std::vector<double> channel_sqerr(channels, 0.0);
  double max_abs = 0.0;
  for (std::size_t f = 0; f < original.frame_count(); ++f) {
    const FeatureTensor& a = original.frame(f);
    const FeatureTensor& b = reconstructed.frame(f);
    for (std::size_t c = 0; c < channels; ++c) {
      const auto av = a.channel(c);
      const auto bv = b.channel(c);
      float lo = bv[0];
      float hi = bv[0];
      for (std::size_t i = 0; i < channel_size; ++i) {
        const double err = static_cast<double>(av[i]) - static_cast<double>(bv[i]);
        channel_sqerr[c] += err * err;
        max_abs = std::max(max_abs, std::fabs(err));
        if (bv[i] < lo) lo = bv[i];
        if (bv[i] > hi) hi = bv[i];
      }
      if (hi != lo) report.flat_channel[c] = false;
    }
  }

  double total_sqerr = 0.0;
  const double per_channel_count =
      static_cast<double>(original.frame_count()) * channel_size;
  for (std::size_t c = 0; c < channels; ++c) {
    report.channel_mse[c] = channel_sqerr[c] / per_channel_count;
    total_sqerr += channel_sqerr[c];
  }
  report.overall_mse = total_sqerr / (per_channel_count * channels);
  report.max_abs_error = max_abs;
  return report;
}

namespace {

double parse_number(const std::string& field, std::size_t line_number,
                    const char* what) {
  std::size_t consumed = 0;
  double value = 0.0;
  try {
    value = std::stod(field, &consumed);
  } catch (const std::exception&) {
    throw InvalidInput("curve csv line " + std::to_string(line_number) +
                       ": cannot parse " + what + " \"" + field + "\"");
  }
  if (consumed != field.size()) {
    throw InvalidInput("curve csv line " + std::to_string(line_number) +
                       ": trailing characters in " + what + " \"" + field + "\"");
  }
  return value;
}

}  // namespace

RateAccuracyCurve read_curve_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_number = 0;
  std::vector<RatePoint> points;
  bool saw_header = false;

  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!saw_header) {
      if (line != "rate,accuracy") {
        throw InvalidInput("curve csv line 1: expected header "
                           "\"rate,accuracy\", got \"" + line + "\"");
      }
      saw_header = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw InvalidInput("curve csv line " + std::to_string(line_number) +
                         ": expected \"rate,accuracy\"");
    }
    RatePoint p;
    p.rate = parse_number(line.substr(0, comma), line_number, "rate");
    p.accuracy = parse_number(line.substr(comma + 1), line_number, "accuracy");
    points.push_back(p);
  }
  if (!saw_header) {
    throw InvalidInput("curve csv: missing \"rate,accuracy\" header");
  }
  return RateAccuracyCurve(std::move(points));
}

std::string write_curve_csv(const RateAccuracyCurve& curve) {
  std::string out = "rate,accuracy\n";
  char buf[96];
  for (const RatePoint& p : curve.points()) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", p.rate, p.accuracy);
    out += buf;
  }
  return out;
}

RateAccuracyCurve load_curve_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string() + " for reading");
  std::ostringstream text;
  text << in.rdbuf();
  return read_curve_csv(text.str());
}

void save_curve_csv(const RateAccuracyCurve& curve,
                    const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << write_curve_csv(curve);
  if (!out) throw Error("write failed for " + path.string());
}

}  // namespace ftc
