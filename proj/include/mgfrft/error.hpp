#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mgfrft {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Matrix or signal dimensions do not agree.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// A scalar parameter is outside its admissible range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// The operation is undefined for this kind of graph (e.g. a directed Laplacian).
class UnsupportedGraphError : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

/// The eigenvector matrix is singular or too ill-conditioned to invert.
class NonDiagonalizableError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// A dense fallback was requested above its size cap.
class SizeError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line == 0 ? what : what + " (line " + std::to_string(line) + ")"),
        line_(line) {}
  explicit ParseError(const std::string& what) : ParseError(what, 0) {}

  /// 1-based line number, 0 when not applicable.
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A station file lacks data the pipeline needs (e.g. coordinates).
class StationRejectedError : public Error {
 public:
  using Error::Error;
};

class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

/// A node has no incident edges, so the kernel normalization is undefined.
class DegenerateNormalizationError : public Error {
 public:
  using Error::Error;
};

/// Two stations share coordinates, so neighbor ranks are not well defined.
class AmbiguousNeighborError : public Error {
 public:
  using Error::Error;
};

class UndefinedMetricError : public Error {
 public:
  using Error::Error;
};

}  // namespace mgfrft
