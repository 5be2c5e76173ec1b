#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace frattini {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class AmbientMismatch : public Error {
 public:
  using Error::Error;
};

class BoundaryNotCycle : public Error {
 public:
  using Error::Error;
};

class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

/// Malformed element text. `position()` is the byte offset of the offending character.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// The subspace of k-invariants does not contain the image of the Bockstein.
class BocksteinNotContained : public Error {
 public:
  BocksteinNotContained(const std::string& what, std::size_t corank)
      : Error(what), corank_(corank) {}
  /// w minus the rank of the projection onto the b-coordinates.
  std::size_t corank() const noexcept { return corank_; }

 private:
  std::size_t corank_;
};

class DegenerateSubspace : public Error {
 public:
  using Error::Error;
};

class DependentQuadratics : public Error {
 public:
  using Error::Error;
};

class SizeLimitExceeded : public Error {
 public:
  using Error::Error;
};

class NotACocycle : public Error {
 public:
  using Error::Error;
};

class NonIntegerResult : public Error {
 public:
  using Error::Error;
};

class ConstraintViolation : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class PrimeTooSmall : public Error {
 public:
  using Error::Error;
};

}  // namespace frattini
