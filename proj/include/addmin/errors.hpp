#pragma once

#include <stdexcept>
#include <string>

namespace addmin {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed numeral or instance document.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Vector or matrix sizes that do not agree with the instance.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An argument outside the mathematical domain of an operation, e.g. a
/// coordinate outside [0,1] or a point that is not a solution.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A caller broke a documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// The number of index tuples to enumerate exceeds the configured cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace addmin
