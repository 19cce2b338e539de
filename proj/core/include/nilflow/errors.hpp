#pragma once

#include <stdexcept>
#include <string>

namespace nilflow {

/// Malformed arguments: dimension mismatch, violated preconditions.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A configuration (file or builder input) that cannot describe a valid model.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Non-finite values produced during evaluation or integration.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace nilflow
