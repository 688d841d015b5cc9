#pragma once

#include <stdexcept>
#include <string>

namespace gridlab {

/// Inconsistent dimensions or invalid configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File could not be read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// NaN or Inf in a loss or gradient; `epoch` is -1 outside training.
class NonFiniteError : public std::runtime_error {
 public:
  NonFiniteError(const std::string& what, long epoch = -1)
      : std::runtime_error(epoch < 0 ? what : what + " at epoch " + std::to_string(epoch)), epoch_(epoch) {}
  long epoch() const { return epoch_; }

 private:
  long epoch_;
};

}  // namespace gridlab
