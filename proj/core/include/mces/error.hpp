#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mces {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller broke a documented precondition (dimension mismatch, bad config).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// A numerical routine failed (Cholesky, eigendecomposition, inversion).
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Malformed or missing input file.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// A leapfrog trajectory produced a non-finite state.
class DivergenceError : public NumericalError {
 public:
  DivergenceError(std::size_t step, const std::string& what);
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

void require(bool condition, const std::string& message);
void require_dim(std::size_t expected, std::size_t actual, const char* what);

}  // namespace mces
