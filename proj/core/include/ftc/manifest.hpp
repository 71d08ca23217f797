#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ftc/truncation.hpp"

namespace ftc {

/// Record of one encode invocation, exactly as executed. The CLI prints it
/// as key=value lines so runs can be scripted, diffed, and replayed.
struct RunManifest {
  std::string input_path;
  std::string output_path;
  AlphaRatio alpha{};
  std::uint32_t refresh_period = 128;
  std::uint8_t inner_codec_id = 0;
  bool truncation = true;
  std::vector<unsigned> q_ladder;               // empty for the raw codec
  std::vector<std::uint64_t> emitted_rate_bits;  // one entry per produced stream
};

/// Validates the manifest (paths non-empty) and renders it as one key=value
/// line per field.
std::string manifest_text(const RunManifest& manifest);

}  // namespace ftc
