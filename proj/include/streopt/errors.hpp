#pragma once

#include <stdexcept>
#include <string>

namespace streopt {

// Error families map onto the CLI exit codes: validation 1, caps 2,
// internal assertions 3.
enum class ErrorKind { kValidation, kCapExceeded, kInternal };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what)
      : Error(ErrorKind::kValidation, what) {}
};

class ParseError : public ValidationError {
 public:
  ParseError(int line, const std::string& what)
      : ValidationError("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

class VertexNotInSolution : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class RhoNotOne : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class DisconnectedAfterExclusion : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class CapExceeded : public Error {
 public:
  explicit CapExceeded(const std::string& what)
      : Error(ErrorKind::kCapExceeded, what) {}
};

class InternalError : public Error {
 public:
  explicit InternalError(const std::string& what)
      : Error(ErrorKind::kInternal, what) {}
};

// Raised when a restriction exceeds (1 + xi) times the input tree cost.
class CostBoundViolated : public InternalError {
 public:
  using InternalError::InternalError;
};

inline int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::kValidation: return 1;
    case ErrorKind::kCapExceeded: return 2;
    case ErrorKind::kInternal: return 3;
  }
  return 3;
}

}  // namespace streopt
