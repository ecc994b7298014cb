#pragma once

#include <functional>

#include "ptspec/grid.hpp"

namespace ptspec {

struct SchrodingerSolution {
  FunctionSample u;
  FunctionSample du;
};

/// Integrate -u'' + V u = k^2 u from x_start to x_end (either direction)
/// with initial data (u0, du0), reporting u and u' at the grid points.
/// Every grid point must lie between x_start and x_end. Adaptive
/// Dormand-Prince with dense output; throws IntegrationError (with the
/// failure abscissa) if the step size collapses.
SchrodingerSolution integrate_schrodinger(const std::function<double(double)>& potential,
                                          double k_squared, double x_start, double x_end,
                                          Complex u0, Complex du0, const Grid& grid,
                                          double rel_tol = 1e-10);

}  // namespace ptspec
