#pragma once

#include <stdexcept>
#include <string>

namespace fanosplit {

/// Base of every exception raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class InvalidField : public Error {
 public:
  using Error::Error;
};

/// Operands live in different fields.
class ContextMismatch : public Error {
 public:
  using Error::Error;
};

class ArityMismatch : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class NotHomogeneous : public Error {
 public:
  using Error::Error;
};

/// An identity violates the pairwise degree bounds required by the requested operation.
class DegreeConstraintViolated : public Error {
 public:
  using Error::Error;
};

class NotCancellable : public Error {
 public:
  using Error::Error;
};

/// The claimed polynomial identity does not hold.
class IdentityMismatch : public Error {
 public:
  using Error::Error;
};

class NotMember : public Error {
 public:
  using Error::Error;
};

/// Raised by the profile reduction when some row product vanishes identically.
class OneSplitDetected : public Error {
 public:
  explicit OneSplitDetected(std::size_t row)
      : Error("plane is one-split: row " + std::to_string(row + 1) + " product vanishes"), row_(row) {}
  std::size_t row() const noexcept { return row_; }

 private:
  std::size_t row_;
};

class HypothesisMismatch : public Error {
 public:
  using Error::Error;
};

class CeilingExceeded : public Error {
 public:
  using Error::Error;
};

class SingularityError : public Error {
 public:
  using Error::Error;
};

}  // namespace fanosplit
