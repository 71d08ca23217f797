#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ftc/error.hpp"

namespace ftc {

/// Little-endian byte-stream writer shared by the .fcmt and .fctb serializers.
class ByteWriter {
 public:
  void u8(std::uint8_t v) { buf_.push_back(v); }

  void u16(std::uint16_t v) {
    buf_.push_back(static_cast<std::uint8_t>(v & 0xff));
    buf_.push_back(static_cast<std::uint8_t>(v >> 8));
  }

  void u32(std::uint32_t v) {
    buf_.push_back(static_cast<std::uint8_t>(v & 0xff));
    buf_.push_back(static_cast<std::uint8_t>((v >> 8) & 0xff));
    buf_.push_back(static_cast<std::uint8_t>((v >> 16) & 0xff));
    buf_.push_back(static_cast<std::uint8_t>(v >> 24));
  }

  /// IEEE-754 bit pattern, little-endian.
  void f32(float v) { u32(std::bit_cast<std::uint32_t>(v)); }

  /// Four-character format tag.
  void magic(const char (&tag)[5]) {
    for (int i = 0; i < 4; ++i) buf_.push_back(static_cast<std::uint8_t>(tag[i]));
  }

  void raw(std::span<const std::uint8_t> bytes) {
    buf_.insert(buf_.end(), bytes.begin(), bytes.end());
  }

  std::size_t size() const noexcept { return buf_.size(); }
  std::vector<std::uint8_t> take() { return std::move(buf_); }

 private:
  std::vector<std::uint8_t> buf_;
};

/// Little-endian reader with positioned errors. Every failure throws a
/// ParseError naming the byte offset of the offending field.
class ByteReader {
 public:
  ByteReader(std::span<const std::uint8_t> bytes, std::string stream_name)
      : bytes_(bytes), name_(std::move(stream_name)) {}

  std::uint8_t u8(const char* field) {
    need(1, field);
    return bytes_[pos_++];
  }

  std::uint16_t u16(const char* field) {
    need(2, field);
    std::uint16_t v = static_cast<std::uint16_t>(bytes_[pos_]) |
                      static_cast<std::uint16_t>(bytes_[pos_ + 1]) << 8;
    pos_ += 2;
    return v;
  }

  std::uint32_t u32(const char* field) {
    need(4, field);
    std::uint32_t v = static_cast<std::uint32_t>(bytes_[pos_]) |
                      static_cast<std::uint32_t>(bytes_[pos_ + 1]) << 8 |
                      static_cast<std::uint32_t>(bytes_[pos_ + 2]) << 16 |
                      static_cast<std::uint32_t>(bytes_[pos_ + 3]) << 24;
    pos_ += 4;
    return v;
  }

  float f32(const char* field) { return std::bit_cast<float>(u32(field)); }

  std::span<const std::uint8_t> raw(std::size_t count, const char* field) {
    need(count, field);
    auto view = bytes_.subspan(pos_, count);
    pos_ += count;
    return view;
  }

  void expect_magic(const char (&tag)[5]) {
    const std::size_t at = pos_;
    need(4, "magic");
    for (int i = 0; i < 4; ++i) {
      if (bytes_[pos_ + i] != static_cast<std::uint8_t>(tag[i])) {
        throw ParseError(name_ + ": bad magic, expected \"" + tag + "\"", at);
      }
    }
    pos_ += 4;
  }

  /// Rejects trailing bytes once a stream claims to be complete.
  void expect_end() const {
    if (pos_ != bytes_.size()) {
      throw ParseError(name_ + ": trailing data after end of stream", pos_);
    }
  }

  std::size_t offset() const noexcept { return pos_; }
  std::size_t remaining() const noexcept { return bytes_.size() - pos_; }

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(name_ + ": " + message, pos_);
  }

  [[noreturn]] void fail_at(const std::string& message, std::size_t at) const {
    throw ParseError(name_ + ": " + message, at);
  }

 private:
  void need(std::size_t count, const char* field) const {
    if (bytes_.size() - pos_ < count) {
      throw ParseError(name_ + ": truncated " + field, pos_);
    }
  }

  std::span<const std::uint8_t> bytes_;
  std::string name_;
  std::size_t pos_ = 0;
};

}  // namespace ftc
