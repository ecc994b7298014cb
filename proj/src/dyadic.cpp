#include "ptspec/dyadic.hpp"

#include <algorithm>
#include <cmath>

namespace ptspec {

namespace {

// C-infinity step: 0 for u <= 0, 1 for u >= 1. Its square root is smooth too,
// which is what keeps the sqrt windows admissible.
double smooth_step(double u) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / u);
  const double b = std::exp(-1.0 / (1.0 - u));
  return a / (a + b);
}

}  // namespace

DyadicSystem::DyadicSystem(std::string variant, double edge, double shape)
    : variant_(std::move(variant)), edge_(edge), shape_(shape) {
  double c = 1.0;
  for (int i = 0; i <= 400; ++i) {
    const double xi = 0.375 + (0.875 - 0.375) * i / 400.0;
    c = std::min(c, phi(xi));
  }
  for (int i = 0; i <= 400; ++i) {
    const double xi = 0.5 * i / 400.0;
    c = std::min(c, Phi(xi));
  }
  c_lower_ = c;
}

DyadicSystem DyadicSystem::build(std::string_view variant) {
  if (variant == "sqrt-partition") return DyadicSystem("sqrt-partition", 0.92, 1.0);
  if (variant == "shifted-sqrt") return DyadicSystem("shifted-sqrt", 0.98, 2.0);
  throw InvalidParameter("DyadicSystem: unknown variant '" + std::string(variant) + "'");
}

double DyadicSystem::eta(double xi) const {
  const double r = std::abs(xi);
  if (r <= 0.5) return 1.0;
  if (r >= edge_) return 0.0;
  const double u = (edge_ - r) / (edge_ - 0.5);
  return smooth_step(std::pow(u, shape_));
}

double DyadicSystem::Phi(double xi) const { return std::sqrt(eta(xi)); }

double DyadicSystem::phi(double xi) const {
  const double v = eta(xi) - eta(2.0 * xi);
  return v > 0.0 ? std::sqrt(v) : 0.0;
}

double DyadicSystem::band_symbol(int j, double xi) const {
  if (j == 0) return Phi(xi);
  return phi(std::ldexp(xi, -j));
}

double DyadicSystem::homogeneous_symbol(int j, double xi) const {
  return phi(std::ldexp(xi, -j));
}

}  // namespace ptspec
