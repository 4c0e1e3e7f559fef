#pragma once

#include <stdexcept>
#include <string>

namespace rydgate {

/// Base of all library errors.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Numerical failures map to CLI exit code 3.
class NumericalError : public Error {
public:
  using Error::Error;
};

/// Bad inputs map to CLI exit code 2.
class InputError : public Error {
public:
  using Error::Error;
};

class UnconfinedError : public InputError {
public:
  using InputError::InputError;
};

class DomainError : public InputError {
public:
  using InputError::InputError;
};

class ModeInstability : public NumericalError {
public:
  using NumericalError::NumericalError;
};

class NoRoot : public NumericalError {
public:
  using NumericalError::NumericalError;
};

class SingularDenominator : public NumericalError {
public:
  using NumericalError::NumericalError;
};

class ToleranceFailure : public NumericalError {
public:
  using NumericalError::NumericalError;
};

class ParseError : public InputError {
public:
  ParseError(const std::string& key, const std::string& what)
      : InputError(key.empty() ? what : key + ": " + what), key_(key) {}
  const std::string& key() const { return key_; }

private:
  std::string key_;
};

class ValidationError : public InputError {
public:
  ValidationError(const std::string& key, const std::string& what)
      : InputError(key + ": " + what), key_(key) {}
  const std::string& key() const { return key_; }

private:
  std::string key_;
};

} // namespace rydgate
