#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cfs {

/// Base class of every error thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A file could not be opened or read.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Malformed input text; carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A value is outside the domain an operation is defined on.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A caller broke a stated precondition (shape mismatch, empty input, ...).
class ContractError : public Error {
 public:
  using Error::Error;
};

/// The requested metric is undefined on this input.
class MetricError : public Error {
 public:
  using Error::Error;
};

/// Factor entries became NaN or Inf; carries the iteration that produced them.
class NumericalError : public Error {
 public:
  NumericalError(const std::string& message, int iteration)
      : Error(message + " at iteration " + std::to_string(iteration)),
        iteration_(iteration) {}

  int iteration() const noexcept { return iteration_; }

 private:
  int iteration_;
};

}  // namespace cfs
