#pragma once

#include <stdexcept>
#include <string>

namespace robreg {

// Bad input data or configuration (shapes, non-finite values, flag misuse).
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical failure inside a solver (non-finite intermediates, too many
// failed replications).
class SolverError : public std::runtime_error {
 public:
  explicit SolverError(const std::string& msg) : std::runtime_error(msg) {}
};

// First-stage residuals too collinear for second-stage inference.
class CollinearityError : public std::runtime_error {
 public:
  explicit CollinearityError(const std::string& msg)
      : std::runtime_error(msg) {}
};

}  // namespace robreg
