#pragma once

#include <stdexcept>
#include <string>

namespace scpast {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class NonFiniteInput : public Error {
 public:
  using Error::Error;
};

class NotOrthonormal : public Error {
 public:
  using Error::Error;
};

class NotSymmetric : public Error {
 public:
  using Error::Error;
};

/// Raised when a matrix that must have full column rank does not.
class DegenerateSubspace : public Error {
 public:
  using Error::Error;
};

/// The d-th principal angle is pi/2, so its tangent does not exist.
class SubspacesOrthogonal : public Error {
 public:
  using Error::Error;
};

class NegativeThreshold : public Error {
 public:
  using Error::Error;
};

class EmptyAccumulator : public Error {
 public:
  using Error::Error;
};

class RankDeficientWarmup : public Error {
 public:
  using Error::Error;
};

/// Diagonal selection kept fewer than d coordinates and the fallback is disabled.
class EmptySelection : public Error {
 public:
  using Error::Error;
};

class BadLength : public Error {
 public:
  using Error::Error;
};

class InvalidModel : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Malformed CSV input; the message carries the offending line number.
class CsvError : public Error {
 public:
  CsvError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace scpast
