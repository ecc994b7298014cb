#pragma once

#include <stdexcept>
#include <string>

namespace ptspec {

/// Bad argument value (p <= 0, negative counts, malformed specs).
class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input outside the mathematical domain of an operation (k = 0, Gamma pole).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A grid or quadrature cannot resolve the requested band / phase.
class ResolutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A stated precondition does not hold (grid too narrow, leaking mass).
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Adaptive ODE integration failed; carries the abscissa of failure.
class IntegrationError : public std::runtime_error {
 public:
  IntegrationError(const std::string& what, double location)
      : std::runtime_error(what), location_(location) {}
  double location() const { return location_; }

 private:
  double location_;
};

/// Asymptotic phase fit did not converge to the requested residual.
class ExtractionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ptspec
