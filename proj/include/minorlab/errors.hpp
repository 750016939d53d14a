#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace minorlab {

enum class ErrorKind {
  BoundExceeded,
  BudgetExhausted,
  PreconditionViolated,
  NotNormalForm,
  UnsupportedOrdinal,
  GroundNotOneConnected,
  TooManyMarks,
  TooFewMarks,
  Disconnected,
  NotATree,
  PresentationFinite,
  TooShort,
  UnknownSuite,
  ParseError,
  InvalidArgument,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// Parse failures carry a 1-based position into the source text.
class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& what)
      : Error(ErrorKind::ParseError,
              std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace minorlab
