#include "ptspec/norms.hpp"

#include <algorithm>
#include <cmath>

namespace ptspec {

double lp_norm(const std::vector<double>& weights, const std::vector<double>& abs_values,
               double p) {
  if (!(p > 0.0)) throw InvalidParameter("lp_norm: p must be positive");
  if (p == kInfinity) {
    double m = 0.0;
    for (double v : abs_values) m = std::max(m, v);
    return m;
  }
  double s = 0.0;
  for (size_t i = 0; i < abs_values.size(); ++i) s += weights[i] * std::pow(abs_values[i], p);
  return std::pow(s, 1.0 / p);
}

double lp_norm(const FunctionSample& f, double p) {
  if (!(p > 0.0)) throw InvalidParameter("lp_norm: p must be positive");
  if (p == kInfinity) {
    double m = 0.0;
    for (const auto& v : f.values) m = std::max(m, std::abs(v));
    return m;
  }
  const auto w = f.grid.trapezoid_weights();
  double s = 0.0;
  for (size_t i = 0; i < f.values.size(); ++i) s += w[i] * std::pow(std::abs(f.values[i]), p);
  return std::pow(s, 1.0 / p);
}

}  // namespace ptspec
