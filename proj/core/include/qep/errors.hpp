#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qep {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ValidationError : public Error {
 public:
  ValidationError(std::string field, const std::string& message)
      : Error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

class DimensionMismatchError : public Error {
 public:
  using Error::Error;
};

class InfeasibleSetError : public Error {
 public:
  using Error::Error;
};

class NonConvergenceError : public Error {
 public:
  using Error::Error;
};

class UnboundedSupportError : public Error {
 public:
  using Error::Error;
};

class OutsideDomainError : public Error {
 public:
  using Error::Error;
};

class UndefinedAtPointError : public Error {
 public:
  using Error::Error;
};

class DegenerateSamplesError : public Error {
 public:
  using Error::Error;
};

class NoMethodApplicableError : public Error {
 public:
  using Error::Error;
};

class InnerBudgetExceededError : public Error {
 public:
  using Error::Error;
};

class EmptyConstraintError : public Error {
 public:
  using Error::Error;
};

class DimensionTooHighError : public Error {
 public:
  using Error::Error;
};

class NonpositiveModulusError : public Error {
 public:
  using Error::Error;
};

class InvalidModulusError : public Error {
 public:
  using Error::Error;
};

/// Config-file syntax error with the 1-based offending line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace qep
