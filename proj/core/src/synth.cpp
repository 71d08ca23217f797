#include "ftc/synth.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace ftc {

namespace {

// Explicit bit mapping instead of std::uniform_real_distribution, whose
// output is implementation-defined; generated corpora must be reproducible
// from the seed alone.
double next_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double next_in(std::mt19937_64& rng, double lo, double hi) {
  return lo + next_unit(rng) * (hi - lo);
}

struct SignalParams {
  double grad_y;
  double grad_x;
  double freq_y;
  double freq_x;
  double phase;
  double drift;  // phase advance per frame
};

void validate(const SynthSpec& spec) {
  if (spec.channels == 0 || spec.height == 0 || spec.width == 0 ||
      spec.frame_count == 0) {
    throw InvalidInput("synth: dimensions and frame count must be >= 1");
  }
  if (spec.active_count > spec.channels) {
    throw InvalidInput("synth: active count exceeds channel count");
  }
  if (!(spec.signal_amplitude > 0.0f) || !std::isfinite(spec.signal_amplitude)) {
    throw InvalidInput("synth: signal amplitude must be finite and > 0");
  }
  if (!(spec.noise_amplitude >= 0.0f) || !std::isfinite(spec.noise_amplitude)) {
    throw InvalidInput("synth: noise amplitude must be finite and >= 0");
  }

  // Inactive channels must land below the cutoff threshold the corpus will
  // produce, otherwise the generated labels are meaningless.
  const double c = static_cast<double>(spec.channels);
  const double a = static_cast<double>(spec.active_count);
  const double mean_range =
      (a * spec.signal_amplitude + (c - a) * spec.noise_amplitude) / c;
  const double threshold = spec.alpha.value() * mean_range;
  if (spec.active_count < spec.channels &&
      !(spec.noise_amplitude < threshold)) {
    throw InvalidInput(
        "synth: noise amplitude is not classifiable as inactive under alpha " +
        spec.alpha.str());
  }
}

// Affinely maps a raw field onto [0, amplitude] so the channel range equals
// the amplitude exactly. A constant field degenerates to all zeros.
void normalize_into(const std::vector<double>& raw, float amplitude,
                    std::vector<float>& out, std::size_t out_base) {
  double lo = raw[0];
  double hi = raw[0];
  for (double v : raw) {
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  if (hi == lo) {
    for (std::size_t i = 0; i < raw.size(); ++i) out[out_base + i] = 0.0f;
    return;
  }
  const double span = hi - lo;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    out[out_base + i] =
        static_cast<float>((raw[i] - lo) / span * static_cast<double>(amplitude));
  }
}

}  // namespace

std::vector<bool> synth_active_channels(const SynthSpec& spec) {
  // Spread the active channels evenly: channel c is active when the running
  // quota floor(c*A/C) advances at c.
  std::vector<bool> active(spec.channels, false);
  for (std::size_t c = 0; c < spec.channels; ++c) {
    const std::size_t before = c * spec.active_count / spec.channels;
    const std::size_t after = (c + 1) * spec.active_count / spec.channels;
    active[c] = after > before;
  }
  return active;
}

FeatureTensorSequence generate_sequence(const SynthSpec& spec) {
  validate(spec);

  const auto active = synth_active_channels(spec);
  std::mt19937_64 rng(spec.seed);

  // Per-channel signal parameters are drawn up front, in channel order, so
  // the per-frame noise stream below is independent of them.
  std::vector<SignalParams> params(spec.channels);
  for (std::size_t c = 0; c < spec.channels; ++c) {
    params[c].grad_y = next_in(rng, 0.5, 1.5);
    params[c].grad_x = next_in(rng, 0.0, 0.3);
    params[c].freq_y = next_in(rng, 1.0, 3.0);
    params[c].freq_x = next_in(rng, 0.05, 0.4);
    params[c].phase = next_in(rng, 0.0, 2.0 * std::numbers::pi);
    params[c].drift = next_in(rng, 0.02, 0.1);
  }

  const std::size_t channel_size = spec.height * spec.width;
  std::vector<double> raw(channel_size);
  std::vector<FeatureTensor> frames;
  frames.reserve(spec.frame_count);

  for (std::size_t f = 0; f < spec.frame_count; ++f) {
    std::vector<float> data(spec.channels * channel_size);
    for (std::size_t c = 0; c < spec.channels; ++c) {
      if (active[c]) {
        const SignalParams& p = params[c];
        const double frame_phase =
            p.phase + p.drift * static_cast<double>(f) * 2.0 * std::numbers::pi;
        for (std::size_t y = 0; y < spec.height; ++y) {
          const double ny = static_cast<double>(y) / spec.height;
          for (std::size_t x = 0; x < spec.width; ++x) {
            const double nx = static_cast<double>(x) / spec.width;
            raw[y * spec.width + x] =
                p.grad_y * ny + p.grad_x * nx +
                0.75 * std::sin(2.0 * std::numbers::pi *
                                    (p.freq_y * ny + p.freq_x * nx) +
                                frame_phase);
          }
        }
        normalize_into(raw, spec.signal_amplitude, data, c * channel_size);
      } else {
        for (std::size_t i = 0; i < channel_size; ++i) raw[i] = next_unit(rng);
        normalize_into(raw, spec.noise_amplitude, data, c * channel_size);
      }
    }
    frames.emplace_back(spec.channels, spec.height, spec.width, std::move(data));
  }
  return FeatureTensorSequence(std::move(frames));
}

}  // namespace ftc
