#pragma once

#include <stdexcept>
#include <string>

namespace npmojo {

// Invalid parameters or precondition violations.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed or incomplete input data.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The median trick produced a zero scale; an explicit scale is required.
class DegenerateScaleError : public std::runtime_error {
 public:
  explicit DegenerateScaleError(int lag)
      : std::runtime_error("median trick gave a zero kernel scale at lag " +
                           std::to_string(lag) + "; supply an explicit --scale"),
        lag_(lag) {}
  int lag() const noexcept { return lag_; }

 private:
  int lag_;
};

}  // namespace npmojo
