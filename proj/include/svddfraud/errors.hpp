#pragma once

#include <stdexcept>
#include <string>

namespace svddfraud {

/// Bad or degenerate input data (malformed files, missing classes, ...).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A solver hit its iteration cap before meeting the KKT tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid configuration or parameters.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace svddfraud
