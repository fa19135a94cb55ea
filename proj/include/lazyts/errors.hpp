#pragma once

#include <stdexcept>
#include <string>

namespace lazyts {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad argument: non-finite values, dimension mismatch, out-of-range parameter.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// The problem instance violates a model assumption (non-spanning arms,
// non-unique best arm).
class InvalidInstance : public Error {
 public:
  using Error::Error;
};

// A configuration is outside the regime the method is defined for.
class InvalidConfig : public Error {
 public:
  using Error::Error;
};

// An operation needed an invertible design matrix and did not get one.
class SingularDesign : public Error {
 public:
  using Error::Error;
};

// Malformed instance or config file. line() is 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace lazyts
