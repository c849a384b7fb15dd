#pragma once

#include <stdexcept>
#include <string>

namespace blockkm {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or truncated Netpbm input. `field()` names the offending header
/// field ("magic", "width", "height", "maxval", "payload", "sample", "size").
class DecodeError : public Error {
 public:
  DecodeError(std::string field, const std::string& what)
      : Error(field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// A value violates a documented precondition or type invariant.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Region or pixel access outside the image.
class BoundsError : public Error {
 public:
  using Error::Error;
};

/// Pieces handed to reassemble() do not tile the target exactly once.
class ReassemblyError : public Error {
 public:
  using Error::Error;
};

}  // namespace blockkm
