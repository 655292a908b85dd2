#pragma once

#include <stdexcept>
#include <string>

namespace gompgof {

/// Invalid argument, parameter, or data (outside an operation's domain).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numeric procedure could not produce a finite answer (overflow, divergence).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The expectation defining the Stein transform does not exist for the given
/// density (e.g. E[e^{bX}] is infinite for heavy-tailed laws).
class MomentConditionError : public NumericError {
 public:
  using NumericError::NumericError;
};

}  // namespace gompgof
