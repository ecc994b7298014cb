#pragma once

#include <limits>

#include "ptspec/grid.hpp"

namespace ptspec {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Weighted lp quasi-norm of the samples, trapezoid weights; p = inf gives the sup.
double lp_norm(const FunctionSample& f, double p);

/// Same, for an explicit (weights, |values|) pair.
double lp_norm(const std::vector<double>& weights, const std::vector<double>& abs_values,
               double p);

inline double l2_norm(const FunctionSample& f) { return lp_norm(f, 2.0); }

inline double relative_l2_error(const FunctionSample& got, const FunctionSample& want) {
  return l2_norm(got - want) / l2_norm(want);
}

}  // namespace ptspec
