#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ftc {

/// Base class of every error thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A violated precondition or domain invariant on an in-process value.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// Malformed serialized input. Carries the byte offset where parsing failed.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t byte_offset)
      : Error(message + " at byte " + std::to_string(byte_offset)),
        byte_offset_(byte_offset) {}

  std::size_t byte_offset() const noexcept { return byte_offset_; }

 private:
  std::size_t byte_offset_;
};

}  // namespace ftc
