#pragma once

#include <stdexcept>
#include <string>

namespace lcuts {

/// Bad or malformed input (files, parameters, preconditions). Maps to CLI exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A computation could not produce a result for otherwise valid input. Exit code 1.
class ComputationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lcuts
