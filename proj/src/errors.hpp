#pragma once

#include <stdexcept>
#include <string>

namespace relax {

// Raised for invalid configuration, parameters, or call preconditions.
// Maps to exit code 2 at the CLI boundary.
class validation_error : public std::runtime_error {
 public:
  explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a computation fails numerically (blow-up, non-convergence).
// Maps to exit code 1 at the CLI boundary.
class numerical_error : public std::runtime_error {
 public:
  explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace relax
