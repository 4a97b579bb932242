#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace realiz {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class SortError : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class ArithmeticOverflow : public Error {
 public:
  using Error::Error;
};

/// Forcing a position of a lazily applied element failed (fuel exhausted or
/// value out of reach).
class EvaluationFault : public Error {
 public:
  EvaluationFault(std::uint64_t position, const std::string& what)
      : Error("position " + std::to_string(position) + ": " + what), position_(position) {}
  std::uint64_t position() const { return position_; }

 private:
  std::uint64_t position_;
};

class ModulusViolation : public Error {
 public:
  using Error::Error;
};

/// A compact code has no node at the requested depth.
class EmptyCode : public Error {
 public:
  EmptyCode(std::size_t index, const std::string& what)
      : Error("code " + std::to_string(index) + ": " + what), index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

class ClassificationError : public Error {
 public:
  using Error::Error;
};

/// Truth of a formula could not be certified within the given budget.
class NotCertifiable : public Error {
 public:
  using Error::Error;
};

class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace realiz
