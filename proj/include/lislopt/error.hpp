#pragma once

#include <stdexcept>
#include <string>

namespace lislopt {

// Base of every error thrown by the library. Callers that only need to know
// "something failed" catch this; the subclasses carry the category.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text (TLE, CSV, JSON). `line` is 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

class NumericError : public Error {
 public:
  using Error::Error;
};

class GeometryError : public Error {
 public:
  using Error::Error;
};

// Argument outside the documented domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// An instance exceeds a hard size cap (exact matcher, brute-force oracle).
class CapacityError : public Error {
 public:
  using Error::Error;
};

// Structurally inconsistent inputs (dimension mismatch, missing keys).
class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace lislopt
