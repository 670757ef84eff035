#pragma once

#include <stdexcept>
#include <string>

namespace fluct {

/// Argument outside the mathematical or physical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A quadrature or root solve that did not reach its tolerance. Carries the
/// best available estimate so callers can still report something.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double best_estimate, double error_estimate,
                   std::string location = {})
      : std::runtime_error(what),
        best_estimate_(best_estimate),
        error_estimate_(error_estimate),
        location_(std::move(location)) {}

  double best_estimate() const noexcept { return best_estimate_; }
  double error_estimate() const noexcept { return error_estimate_; }
  const std::string& location() const noexcept { return location_; }

 private:
  double best_estimate_;
  double error_estimate_;
  std::string location_;
};

}  // namespace fluct
