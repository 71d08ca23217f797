#pragma once

#include <cstdint>
#include <vector>

#include "ftc/tensor.hpp"
#include "ftc/truncation.hpp"

namespace ftc {

/// Deterministic synthetic corpus: active channels carry structured signal
/// (smooth gradients plus slowly drifting sinusoids) so a lossy inner codec
/// has something to trade rate against; inactive channels carry low-amplitude
/// per-sample noise. Each channel is normalized so its per-frame range equals
/// its amplitude exactly, which keeps classification outcomes predictable.
struct SynthSpec {
  std::size_t channels = 320;
  std::size_t active_count = 200;
  std::size_t height = 32;
  std::size_t width = 32;
  std::size_t frame_count = 128;
  float signal_amplitude = 8.0f;
  float noise_amplitude = 0.05f;
  std::uint64_t seed = 1;
  /// Used only to validate that inactive channels stay classifiable:
  /// noise_amplitude < alpha * (A*signal + (C-A)*noise) / C must hold.
  AlphaRatio alpha{};
};

/// Which channels carry signal: exactly active_count channels spread evenly
/// across [0, channels).
std::vector<bool> synth_active_channels(const SynthSpec& spec);

/// Generates the corpus. Byte-deterministic for a fixed spec.
FeatureTensorSequence generate_sequence(const SynthSpec& spec);

}  // namespace ftc
