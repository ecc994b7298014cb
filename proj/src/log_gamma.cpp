#include "ptspec/log_gamma.hpp"

#include <cmath>

#include "ptspec/errors.hpp"

namespace ptspec {

namespace {

using Cplx = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;
constexpr double kLogTwoPi = 1.8378770664093454836;  // log(2 pi)

// Stirling coefficients B_{2n} / (2n (2n-1)).
constexpr double kStirling[] = {
    1.0 / 12.0,           -1.0 / 360.0,          1.0 / 1260.0,
    -1.0 / 1680.0,        1.0 / 1188.0,          -691.0 / 360360.0,
    1.0 / 156.0,          -3617.0 / 122400.0,
};

// Asymptotic series, accurate for |z| >= 12 with Re z > 0.
Cplx stirling(Cplx z) {
  const Cplx rz = 1.0 / z;
  const Cplx rz2 = rz * rz;
  Cplx series = 0.0;
  for (int i = 7; i >= 0; --i) series = series * rz2 + kStirling[i];
  return (z - 0.5) * std::log(z) - z + 0.5 * kLogTwoPi + series * rz;
}

// log sin(pi z), unwound so that the reflection formula stays on the
// principal branch; valid for Im z >= 0, z not an integer.
Cplx log_sin_pi_upper(Cplx z) {
  // sin(pi z) = (i/2) e^{-i pi z} (1 - e^{2 i pi z})
  const Cplx i(0.0, 1.0);
  return i * kPi / 2.0 - std::log(2.0) - i * kPi * z + std::log(1.0 - std::exp(2.0 * i * kPi * z));
}

// Direct evaluation for Re z >= 0.5 via recurrence into the Stirling region.
Cplx log_gamma_right(Cplx z) {
  Cplx shift = 0.0;
  while (std::abs(z) < 12.0) {
    shift += std::log(z);
    z += 1.0;
  }
  return stirling(z) - shift;
}

Cplx log_gamma_any(Cplx z) {
  if (z.imag() < 0.0) return std::conj(log_gamma_any(std::conj(z)));
  if (z.real() >= 0.5) return log_gamma_right(z);
  // reflection; 1 - z lands in the right half-plane, so this terminates
  return std::log(kPi) - log_sin_pi_upper(z) - log_gamma_any(1.0 - z);
}

}  // namespace

std::complex<double> log_gamma(std::complex<double> z) {
  if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real()))
    throw DomainError("log_gamma: pole at nonpositive integer");
  return log_gamma_any(z);
}

}  // namespace ptspec
