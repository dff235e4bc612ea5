#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace smc {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed expression or formula text. `position` is a 0-based byte offset.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : Error(message + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Identifier that is neither a declared species nor a parameter.
class UnknownIdentifierError : public ParseError {
 public:
  UnknownIdentifierError(const std::string& name, std::size_t position)
      : ParseError("unknown identifier '" + name + "'", position), name_(name) {}

  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

/// Runtime arithmetic failure (division by zero, domain errors).
class EvaluationError : public Error {
 public:
  EvaluationError(const std::string& message, std::string subexpression)
      : Error(message + " in '" + subexpression + "'"),
        subexpression_(std::move(subexpression)) {}

  const std::string& subexpression() const noexcept { return subexpression_; }

 private:
  std::string subexpression_;
};

/// The model produced an impossible quantity, e.g. a negative propensity.
class ModelError : public Error {
 public:
  using Error::Error;
};

/// Replica failures exceeded the tolerated fraction of a batch.
class BatchError : public Error {
 public:
  using Error::Error;
};

}  // namespace smc
