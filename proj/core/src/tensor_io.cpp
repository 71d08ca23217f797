#include "ftc/tensor_io.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>

#include "ftc/bytes.hpp"

namespace ftc {

std::vector<std::uint8_t> write_tensor_sequence(const FeatureTensorSequence& seq) {
  if (seq.frame_count() > std::numeric_limits<std::uint32_t>::max()) {
    throw InvalidInput("fcmt: frame count does not fit in u32");
  }
  if (seq.channels() > std::numeric_limits<std::uint16_t>::max() ||
      seq.height() > std::numeric_limits<std::uint16_t>::max() ||
      seq.width() > std::numeric_limits<std::uint16_t>::max()) {
    throw InvalidInput("fcmt: tensor dimensions do not fit in u16");
  }

  ByteWriter w;
  w.magic("FCMT");
  w.u8(kTensorFileVersion);
  w.u32(static_cast<std::uint32_t>(seq.frame_count()));
  w.u16(static_cast<std::uint16_t>(seq.channels()));
  w.u16(static_cast<std::uint16_t>(seq.height()));
  w.u16(static_cast<std::uint16_t>(seq.width()));
  for (const auto& frame : seq.frames()) {
    for (float v : frame.data()) w.f32(v);
  }
  return w.take();
}

FeatureTensorSequence read_tensor_sequence(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes, "fcmt");
  r.expect_magic("FCMT");

  const std::size_t version_at = r.offset();
  const std::uint8_t version = r.u8("version");
  if (version != kTensorFileVersion) {
    r.fail_at("unknown version " + std::to_string(version), version_at);
  }

  const std::size_t frame_count_at = r.offset();
  const std::uint32_t frame_count = r.u32("frame count");
  if (frame_count == 0) r.fail_at("frame count must be >= 1", frame_count_at);

  const std::size_t dims_at = r.offset();
  const std::uint16_t channels = r.u16("channel count");
  const std::uint16_t height = r.u16("height");
  const std::uint16_t width = r.u16("width");
  if (channels == 0 || height == 0 || width == 0) {
    r.fail_at("dimensions must be >= 1", dims_at);
  }

  const std::size_t values_per_frame =
      std::size_t{channels} * height * width;
  // Size sanity before any allocation scales with declared counts; the
  // division form cannot overflow.
  const std::uint64_t frame_bytes =
      static_cast<std::uint64_t>(values_per_frame) * 4;
  if (frame_bytes > r.remaining() ||
      frame_count > r.remaining() / frame_bytes) {
    r.fail("truncated payload: " + std::to_string(frame_count) + " frames of " +
           std::to_string(frame_bytes) + " bytes declared, " +
           std::to_string(r.remaining()) + " available");
  }

  std::vector<FeatureTensor> frames;
  frames.reserve(frame_count);
  for (std::uint32_t f = 0; f < frame_count; ++f) {
    std::vector<float> data(values_per_frame);
    for (std::size_t i = 0; i < values_per_frame; ++i) {
      const std::size_t at = r.offset();
      const float v = r.f32("tensor value");
      if (!std::isfinite(v)) r.fail_at("non-finite tensor value", at);
      data[i] = v;
    }
    frames.emplace_back(channels, height, width, std::move(data));
  }
  r.expect_end();
  return FeatureTensorSequence(std::move(frames));
}

void save_tensor_sequence(const FeatureTensorSequence& seq,
                          const std::filesystem::path& path) {
  const auto bytes = write_tensor_sequence(seq);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error("write failed for " + path.string());
}

FeatureTensorSequence load_tensor_sequence(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary | std::ios::ate);
  if (!in) throw Error("cannot open " + path.string() + " for reading");
  const auto size = static_cast<std::size_t>(in.tellg());
  in.seekg(0);
  std::vector<std::uint8_t> bytes(size);
  in.read(reinterpret_cast<char*>(bytes.data()),
          static_cast<std::streamsize>(size));
  if (!in) throw Error("read failed for " + path.string());
  return read_tensor_sequence(bytes);
}

}  // namespace ftc
