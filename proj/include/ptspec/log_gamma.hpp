#pragma once

#include <complex>

namespace ptspec {

/// Principal branch of log Gamma (real on the positive axis, analytic off
/// the cut along the nonpositive reals). Throws DomainError at the poles.
/// exp(log_gamma(z)) reproduces Gamma(z) to ~1e-13 relative for |z| <= 50.
std::complex<double> log_gamma(std::complex<double> z);

inline std::complex<double> gamma_complex(std::complex<double> z) {
  return std::exp(log_gamma(z));
}

}  // namespace ptspec
