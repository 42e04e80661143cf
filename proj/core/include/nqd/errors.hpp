#pragma once

#include <stdexcept>
#include <string>

namespace nqd {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live in different ambient spaces or fields.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
};

/// A structural invariant of an input object does not hold.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

/// A map given on generators does not extend to a derivation.
class NotADerivation : public Error {
 public:
  using Error::Error;
};

/// A map given on generators does not respect the relations.
class NotAMorphism : public Error {
 public:
  using Error::Error;
};

/// Characteristic-class computation refused because 2n >= p.
class CharacteristicGuard : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line = 0, int column = 0)
      : Error(line > 0 ? what + " (line " + std::to_string(line) + ", column " +
                             std::to_string(column) + ")"
                       : what),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace nqd
