#pragma once

#include <stdexcept>
#include <string>

namespace cuspgeo {

// Precondition or domain violation of an operation (bad length, radius out of
// range, level outside the metric interval...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class DegenerateLatticeError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Operation not available for this kind of input (e.g. non-diagonal metric).
class UnsupportedError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Iterative solver gave up. Carries the last residual it saw.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double last_residual)
      : std::runtime_error(what), last_residual_(last_residual) {}
  double last_residual() const noexcept { return last_residual_; }

 private:
  double last_residual_;
};

class SingularJacobianError : public ConvergenceError {
 public:
  using ConvergenceError::ConvergenceError;
};

}  // namespace cuspgeo
