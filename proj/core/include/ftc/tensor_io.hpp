#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "ftc/tensor.hpp"

namespace ftc {

// .fcmt container, little-endian:
//   magic "FCMT" | version u8 = 1 | frame_count u32 | C u16 | H u16 | W u16
//   then frame_count blocks of C*H*W IEEE-754 binary32 values,
//   channel-major then row-major.
inline constexpr std::size_t kTensorFileHeaderBytes = 15;
inline constexpr std::uint8_t kTensorFileVersion = 1;

std::vector<std::uint8_t> write_tensor_sequence(const FeatureTensorSequence& seq);
FeatureTensorSequence read_tensor_sequence(std::span<const std::uint8_t> bytes);

void save_tensor_sequence(const FeatureTensorSequence& seq,
                          const std::filesystem::path& path);
FeatureTensorSequence load_tensor_sequence(const std::filesystem::path& path);

}  // namespace ftc
