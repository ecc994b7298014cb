#include "ptspec/ode.hpp"

#include <algorithm>
#include <array>
#include <boost/numeric/odeint.hpp>
#include <cmath>

#include "ptspec/errors.hpp"

namespace ptspec {

namespace {

// state = (Re u, Im u, Re u', Im u')
using State = std::array<double, 4>;

struct Rhs {
  const std::function<double(double)>& potential;
  double k_squared;

  void operator()(const State& y, State& dy, double x) const {
    const double c = potential(x) - k_squared;
    dy[0] = y[2];
    dy[1] = y[3];
    dy[2] = c * y[0];
    dy[3] = c * y[1];
  }
};

}  // namespace

SchrodingerSolution integrate_schrodinger(const std::function<double(double)>& potential,
                                          double k_squared, double x_start, double x_end,
                                          Complex u0, Complex du0, const Grid& grid,
                                          double rel_tol) {
  namespace odeint = boost::numeric::odeint;
  if (x_start == x_end) throw InvalidParameter("integrate_schrodinger: empty interval");
  const double lo = std::min(x_start, x_end);
  const double hi = std::max(x_start, x_end);
  const double slack = 1e-9 * (hi - lo);
  if (grid.x_min() < lo - slack || grid.x_max() > hi + slack)
    throw InvalidParameter("integrate_schrodinger: grid exceeds the integration interval");

  const bool forward = x_end > x_start;
  SchrodingerSolution out{FunctionSample(grid), FunctionSample(grid)};

  // Grid indices in sweep order.
  std::vector<int> order(grid.n_points());
  for (int i = 0; i < grid.n_points(); ++i) order[i] = forward ? i : grid.n_points() - 1 - i;

  State y{u0.real(), u0.imag(), du0.real(), du0.imag()};
  Rhs rhs{potential, k_squared};

  auto stepper = odeint::make_dense_output(1e-14, rel_tol,
                                           odeint::runge_kutta_dopri5<State>());
  const double dt0 = (forward ? 1.0 : -1.0) * std::min(1e-3, (hi - lo) / 100.0);
  stepper.initialize(y, x_start, dt0);

  auto record = [&](int idx, const State& s) {
    out.u.values[idx] = Complex(s[0], s[1]);
    out.du.values[idx] = Complex(s[2], s[3]);
  };

  std::size_t next = 0;
  auto passed = [&](double t, double target) {
    return forward ? t >= target - 1e-13 : t <= target + 1e-13;
  };
  // Emit any grid points already at the start.
  while (next < order.size() && passed(x_start, grid.x(order[next]))) {
    record(order[next], y);
    ++next;
  }

  while (next < order.size()) {
    try {
      stepper.do_step(rhs);
    } catch (const std::exception& e) {
      throw IntegrationError(std::string("integrate_schrodinger: ") + e.what(),
                             stepper.current_time());
    }
    if (!std::isfinite(stepper.current_state()[0]))
      throw IntegrationError("integrate_schrodinger: solution overflow",
                             stepper.current_time());
    while (next < order.size() && passed(stepper.current_time(), grid.x(order[next]))) {
      State s;
      stepper.calc_state(grid.x(order[next]), s);
      record(order[next], s);
      ++next;
    }
    const double remaining = forward ? x_end - stepper.current_time()
                                     : stepper.current_time() - x_end;
    if (remaining < -1e-9 && next < order.size())
      throw IntegrationError("integrate_schrodinger: passed interval end with points pending",
                             stepper.current_time());
  }
  return out;
}

}  // namespace ptspec
