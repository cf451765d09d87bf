#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace xmasjump {

enum class ErrorKind {
  InsufficientData,
  MissingFixing,
  IncompleteWindow,
  DegenerateDesign,
  RankDeficient,
  TooFewRows,
  Singular,
  DomainError,
  DegenerateVariance,
  WindowTooShort,
  ParseError,
  DuplicateDate,
  InvalidArgument,
};

std::string_view to_string(ErrorKind kind);

// Single exception type for the library; callers branch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Raised by the delimited-text readers; line is 1-based.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& reason)
      : Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": " + reason), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace xmasjump
