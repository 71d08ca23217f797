#include "ftc/manifest.hpp"

#include "ftc/error.hpp"

namespace ftc {

std::string manifest_text(const RunManifest& manifest) {
  if (manifest.input_path.empty() || manifest.output_path.empty()) {
    throw InvalidInput("manifest: paths must be non-empty");
  }
  std::string out;
  out += "input=" + manifest.input_path + "\n";
  out += "output=" + manifest.output_path + "\n";
  out += "alpha=" + manifest.alpha.str() + "\n";
  out += "refresh=" + std::to_string(manifest.refresh_period) + "\n";
  out += "codec_id=" + std::to_string(manifest.inner_codec_id) + "\n";
  out += "truncation=" + std::to_string(manifest.truncation ? 1 : 0) + "\n";

  out += "q_ladder=";
  for (std::size_t i = 0; i < manifest.q_ladder.size(); ++i) {
    if (i > 0) out += ",";
    out += std::to_string(manifest.q_ladder[i]);
  }
  out += "\n";

  out += "rate_bits=";
  for (std::size_t i = 0; i < manifest.emitted_rate_bits.size(); ++i) {
    if (i > 0) out += ",";
    out += std::to_string(manifest.emitted_rate_bits[i]);
  }
  out += "\n";
  return out;
}

}  // namespace ftc
