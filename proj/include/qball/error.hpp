#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qball {

/// A documented precondition of an operation was violated by the caller.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed text input (word expressions, graph JSON). Carries the byte
/// offset at which parsing stopped.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// An identity was requested on a truncated space too small to hold it.
class HeadroomError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The modulus is singular on the interior of the requested corner.
class NotPolarDecomposable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qball
