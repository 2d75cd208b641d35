#pragma once

#include <stdexcept>
#include <string>

namespace fracshear {

/// Out-of-range physical or numerical parameter (α ∉ (0,2], k = 0, t < 0, ...).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Fields or matrices whose shapes do not match.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An input violates a documented precondition (e.g. k=0 content where none is allowed).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Sample data unusable for a fit (too few points, nonpositive values, nonuniform spacing).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// NaN/Inf or a failed numerical search.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed configuration file; the message carries the line number when known.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fracshear
