#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tssim {

/// Base of every exception thrown by the library. The C API maps each
/// subclass onto one status code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text (Pauli files, matrix JSON). Carries the 1-based line
/// number when one is known, 0 otherwise.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what, std::size_t line = 0)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A precondition on shapes, indices or argument ranges was violated.
class ContractError : public Error {
 public:
  using Error::Error;
};

/// The arguments are well formed but outside the mathematical domain
/// (norm above one, negative eigenvalue under a square root, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An iterative method failed or a result degenerated numerically.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// A dense dimension exceeded the configured cap.
class SizeError : public ContractError {
 public:
  using ContractError::ContractError;
};

}  // namespace tssim
