#include "mces/error.hpp"

namespace mces {

DivergenceError::DivergenceError(std::size_t step, const std::string& what)
    : NumericalError(what + " (leapfrog step " + std::to_string(step) + ")"),
      step_(step) {}

void require(bool condition, const std::string& message) {
  if (!condition) throw ContractViolation(message);
}

void require_dim(std::size_t expected, std::size_t actual, const char* what) {
  if (expected != actual) {
    throw ContractViolation(std::string(what) + ": expected dimension " +
                            std::to_string(expected) + ", got " +
                            std::to_string(actual));
  }
}

}  // namespace mces
