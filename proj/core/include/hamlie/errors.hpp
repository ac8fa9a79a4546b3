#pragma once

#include <stdexcept>
#include <string>

namespace hamlie {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or mismatched input (heights, fields, file contents).
class InputError : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its domain (degenerate form, invalid word).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
};

/// A divided power leaves the height truncation of its algebra.
class UndefinedDividedPower : public Error {
 public:
  using Error::Error;
};

/// An enumeration would exceed its configured bound.
class BoundExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace hamlie
