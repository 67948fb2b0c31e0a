#pragma once

#include <stdexcept>
#include <string>

namespace genconv {

/// Base class for every error raised by the library. `origin()` names the
/// module that raised it so that the CLI can report where a failure came from.
class Error : public std::runtime_error {
 public:
  Error(std::string origin, const std::string& what)
      : std::runtime_error(origin + ": " + what), origin_(std::move(origin)) {}

  const std::string& origin() const noexcept { return origin_; }

 private:
  std::string origin_;
};

/// Out-of-range parameters or arguments.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature failed to reach its tolerance.
class QuadratureError : public Error {
 public:
  using Error::Error;
};

/// The requested operation has no implementation for this family (for
/// instance the Kendall-type point-mass convolution).
class UnsupportedFamily : public Error {
 public:
  using Error::Error;
};

/// Williamson inversion was asked to evaluate at a jump of F.
class DiscontinuityError : public Error {
 public:
  using Error::Error;
};

/// quantile(1) of a law with unbounded support.
class UnboundedQuantile : public Error {
 public:
  using Error::Error;
};

/// Malformed serialized input (measure JSON, sample CSV).
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace genconv
