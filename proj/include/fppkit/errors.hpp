#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fppkit {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Precondition on an argument failed (wrong arity, not a root, ...).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// Arithmetic on incompatible moduli / fields, or a non-invertible element.
class ArithmeticError : public Error {
 public:
  using Error::Error;
};

// A denominator (or leading coefficient) is divisible by the working prime.
class BadPrime : public Error {
 public:
  using Error::Error;
};

class InsufficientPrecision : public Error {
 public:
  using Error::Error;
};

class LiftObstructed : public Error {
 public:
  LiftObstructed(std::size_t step, const std::string& what)
      : Error("lift obstructed at step " + std::to_string(step) + ": " + what),
        step_(step) {}
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

class NotAField : public Error {
 public:
  using Error::Error;
};

class DegreeCapExceeded : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace fppkit
