#pragma once

#include <stdexcept>
#include <string>

namespace eckart {

// Base of every error raised by the library. The CLI maps these to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

// alpha <= beta: the potential is monotone and has no well.
class NoMinimum : public Error {
 public:
  using Error::Error;
};

// Approximation weights that do not sum to one.
class WeightError : public Error {
 public:
  using Error::Error;
};

// Negative discriminant under the origin exponent; the scheme cannot be used
// for the requested state.
class SchemeInvalid : public Error {
 public:
  using Error::Error;
};

class StateDoesNotExist : public Error {
 public:
  using Error::Error;
};

class NoStateFound : public Error {
 public:
  using Error::Error;
};

class NonConverged : public Error {
 public:
  using Error::Error;
};

class NoSignChange : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace eckart
