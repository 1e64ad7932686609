#pragma once

#include <stdexcept>
#include <string>

namespace septoku {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An id (cell, region, class label) that does not exist on the board.
class LookupError : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Seeds that reference cells off the board or symbols outside 1..7.
class MalformedPuzzle : public Error {
 public:
  using Error::Error;
};

/// Two objects that must share a board family do not.
class FamilyMismatch : public Error {
 public:
  using Error::Error;
};

class UnsupportedSymmetry : public Error {
 public:
  using Error::Error;
};

class TheoremViolation : public Error {
 public:
  using Error::Error;
};

class ClassificationError : public Error {
 public:
  using Error::Error;
};

/// Text-format error with a 1-based source position.
class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& message)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
              message),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace septoku
