#pragma once

#include <stdexcept>
#include <string>

namespace grpvol {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text (presentation source, JSON documents).
class ParseError : public Error {
 public:
  ParseError(const std::string& message, int line = 0, int column = 0)
      : Error(line > 0 ? message + " at line " + std::to_string(line) + ", column " +
                             std::to_string(column)
                       : message),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

/// Well-formed input that violates a structural invariant (e.g. a
/// triangle shared by three tetrahedra, a non-orientable complex).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// A mathematical precondition does not hold (not a cocycle, not a
/// rational homology sphere, map not surjective on the abelianization).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A configurable search budget ran out; results would be incomplete.
class ResourceLimitError : public Error {
 public:
  using Error::Error;
};

/// A file could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace grpvol
