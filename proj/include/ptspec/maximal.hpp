#pragma once

#include "ptspec/bands.hpp"

namespace ptspec {

/// Centered Hardy-Littlewood maximal function: sup over all symmetric grid
/// windows of the average of |f| (f extended by zero off the grid).
FunctionSample hl_maximal(const FunctionSample& f);

/// Peetre maximal function of a precomputed band g = phi_j(H) f:
///   sup_t |g(t)| / (1 + 2^{j/2}|x - t|)^s,
/// with t running over the grid of g. use_derivative replaces g by its
/// centered finite-difference derivative (the ** variant).
FunctionSample peetre_maximal_of_band(const FunctionSample& band, int j, double s,
                                      bool use_derivative = false, unsigned workers = 0);

/// Spec-level wrapper: computes the band first. oversample > 1 evaluates the
/// band on a refined t-lattice before taking the sup (the sup stays indexed
/// by the original grid points).
FunctionSample peetre_maximal(int j, const FunctionSample& f, double s,
                              const DyadicSystem& system, const Potential& pot,
                              bool with_derivative = false, int oversample = 1,
                              unsigned workers = 0);

/// Centered finite-difference derivative (one-sided at the ends).
FunctionSample derivative(const FunctionSample& f);

}  // namespace ptspec
