#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace accwb {

enum class ErrorKind {
  InputArity,
  ResourceLimit,
  Composition,
  UnsupportedGate,
  InvalidCircuit,
  Syntax,
  Semantic,
  Format,
  Range,
  NotSymAnd,
  UnsupportedDepth,
  Decode,
  Encoding,
  InvalidArgument,
  Internal,
};

const char* to_string(ErrorKind kind);

/// Every failure raised by the library carries a kind so callers (and the CLI's
/// exit-code mapping) can dispatch without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Parse failure with a 1-based source position.
class ParseError : public Error {
 public:
  ParseError(ErrorKind kind, std::size_t line, std::size_t column, const std::string& message)
      : Error(kind, "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                        message),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace accwb
