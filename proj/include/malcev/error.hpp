#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace malcev {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual input. `position` is a byte offset into the parsed text.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at offset " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Structurally valid input that violates a signature or dimension contract.
class SignatureError : public Error {
 public:
  using Error::Error;
};

}  // namespace malcev
