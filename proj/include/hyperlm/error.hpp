#pragma once

#include <stdexcept>
#include <string>

namespace hyperlm {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// Point is not on the hyperboloid (or not on the requested sheet).
class OffManifold : public Error {
 public:
  using Error::Error;
};

// Classifier vector with w*w >= 0.
class InvalidHypothesis : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A computation reached a state it cannot recover from (degenerate update,
// exhausted rejection budget, stalled packing).
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace hyperlm
