#pragma once

#include <stdexcept>
#include <string>

namespace nbtb {

/// Base of every typed failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Numeric degeneracies: the CLI maps every subclass to exit code 3.
class NumericError : public Error {
 public:
  using Error::Error;
};

class DivisionByNearZero : public NumericError {
 public:
  using NumericError::NumericError;
};

class DomainError : public NumericError {
 public:
  using NumericError::NumericError;
};

class DegenerateImmersion : public NumericError {
 public:
  using NumericError::NumericError;
};

class UmbilicDerivativesUnavailable : public NumericError {
 public:
  using NumericError::NumericError;
};

class DegenerateChart : public NumericError {
 public:
  using NumericError::NumericError;
};

class IllConditionedFit : public NumericError {
 public:
  using NumericError::NumericError;
};

/// Input problems: the CLI maps these to exit code 2.
class InputError : public Error {
 public:
  using Error::Error;
};

class OutOfDomain : public InputError {
 public:
  using InputError::InputError;
};

class ConfigParseError : public InputError {
 public:
  using InputError::InputError;
};

}  // namespace nbtb
