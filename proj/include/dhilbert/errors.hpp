#pragma once

#include <stdexcept>
#include <string>

namespace dhilbert {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Panel doubling failed to stabilise a quadrature within its tolerance.
class NonConvergence : public Error {
 public:
  using Error::Error;
};

/// Multi-dimensional kernels are limited to s <= 3.
class DimensionTooLarge : public Error {
 public:
  using Error::Error;
};

/// A kernel cache file could not be read or is corrupt.
class CacheIOError : public Error {
 public:
  using Error::Error;
};

class WindowTooSmall : public Error {
 public:
  using Error::Error;
};

class WindowMismatch : public Error {
 public:
  using Error::Error;
};

/// No kernel radius within the budget meets the requested truncation tolerance.
class RadiusInsufficient : public Error {
 public:
  using Error::Error;
};

class UnknownCheck : public Error {
 public:
  using Error::Error;
};

class InvalidParams : public Error {
 public:
  using Error::Error;
};

}  // namespace dhilbert
