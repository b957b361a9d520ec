#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace foldlang {

// Root of every error raised by the library. Each failure mode named by the
// operations has its own subclass so callers can match on type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& reason, std::size_t position)
      : Error("parse error at " + std::to_string(position) + ": " + reason),
        reason_(reason),
        position_(position) {}

  const std::string& reason() const noexcept { return reason_; }
  std::size_t position() const noexcept { return position_; }

 private:
  std::string reason_;
  std::size_t position_;
};

class AlphabetMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidResidue : public Error {
 public:
  using Error::Error;
};

class CapExceeded : public Error {
 public:
  using Error::Error;
};

class LengthMismatch : public Error {
 public:
  using Error::Error;
};

class NotLinear : public Error {
 public:
  using Error::Error;
};

class NotNormalForm : public Error {
 public:
  using Error::Error;
};

class ProcAlphabetError : public Error {
 public:
  using Error::Error;
};

class UnknownNonterminal : public Error {
 public:
  using Error::Error;
};

class PreconditionViolation : public Error {
 public:
  using Error::Error;
};

class TooShort : public Error {
 public:
  using Error::Error;
};

}  // namespace foldlang
