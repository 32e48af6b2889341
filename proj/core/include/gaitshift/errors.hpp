#pragma once

#include <stdexcept>
#include <string>

namespace gaitshift {

/// Caller violated a precondition (bad sizes, missing derivatives, ...).
class InvalidInputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A file could not be parsed. Carries the 1-based row where parsing stopped
/// when the problem is tied to a specific row (0 otherwise).
class DataFormatError : public std::runtime_error {
 public:
  DataFormatError(const std::string& what, std::size_t row = 0)
      : std::runtime_error(row ? what + " (row " + std::to_string(row) + ")" : what),
        row_(row) {}

  std::size_t row() const { return row_; }

 private:
  std::size_t row_;
};

/// A numerical routine failed beyond recovery (e.g. factorization not
/// positive definite after jitter escalation).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gaitshift
