#include "ptspec/maximal.hpp"

#include <algorithm>
#include <cmath>

#include "ptspec/parallel.hpp"

namespace ptspec {

FunctionSample derivative(const FunctionSample& f) {
  const int n = f.grid.n_points();
  const double h = f.grid.spacing();
  FunctionSample out(f.grid);
  out.values[0] = (f.values[1] - f.values[0]) / h;
  for (int i = 1; i + 1 < n; ++i)
    out.values[i] = (f.values[i + 1] - f.values[i - 1]) / (2.0 * h);
  out.values[n - 1] = (f.values[n - 1] - f.values[n - 2]) / h;
  return out;
}

FunctionSample hl_maximal(const FunctionSample& f) {
  const int n = f.grid.n_points();
  const double h = f.grid.spacing();
  // prefix sums of |f| give every window average in O(1)
  std::vector<double> prefix(n + 1, 0.0);
  for (int i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + std::abs(f.values[i]);
  FunctionSample out(f.grid);
  for (int i = 0; i < n; ++i) {
    double best = std::abs(f.values[i]);
    for (int r = 1; r < n; ++r) {
      const int lo = std::max(0, i - r);
      const int hi = std::min(n - 1, i + r);
      // trapezoid mass of |f| over [x_i - rh, x_i + rh], zero off the grid
      double mass = (prefix[hi + 1] - prefix[lo]) * h;
      mass -= 0.5 * h * (std::abs(f.values[lo]) + std::abs(f.values[hi]));
      best = std::max(best, mass / (2.0 * r * h));
      // once the window covers the grid the average only decreases
      if (lo == 0 && hi == n - 1) break;
    }
    out.values[i] = best;
  }
  return out;
}

FunctionSample peetre_maximal_of_band(const FunctionSample& band, int j, double s,
                                      bool use_derivative, unsigned workers) {
  if (!(s > 0.0)) throw InvalidParameter("peetre_maximal: s must be positive");
  const FunctionSample g = use_derivative ? derivative(band) : band;
  const int n = g.grid.n_points();
  const double h = g.grid.spacing();
  const double lam = std::pow(2.0, j / 2.0);
  std::vector<double> mag(n);
  double global = 0.0;
  for (int i = 0; i < n; ++i) {
    mag[i] = std::abs(g.values[i]);
    global = std::max(global, mag[i]);
  }
  FunctionSample out(g.grid);
  parallel_for(static_cast<size_t>(n), workers, [&](size_t ii) {
    const int i = static_cast<int>(ii);
    double best = mag[i];  // t = x term
    for (int d = 1; d < n; ++d) {
      const double w = std::pow(1.0 + lam * d * h, s);
      if (global / w <= best) break;  // weight only grows with d
      if (i - d >= 0) best = std::max(best, mag[i - d] / w);
      if (i + d < n) best = std::max(best, mag[i + d] / w);
    }
    out.values[i] = best;
  });
  return out;
}

FunctionSample peetre_maximal(int j, const FunctionSample& f, double s,
                              const DyadicSystem& system, const Potential& pot,
                              bool with_derivative, int oversample, unsigned workers) {
  if (oversample < 1) throw InvalidParameter("peetre_maximal: oversample must be >= 1");
  const KQuadrature kq = (j == 0) ? KQuadrature::low_energy(f.grid.extent())
                                  : KQuadrature::dyadic_band(j, f.grid.extent());
  const DistortedTransform plan(pot, f.grid, kq, workers);
  const Symbol sym = [&](double xi) { return system.band_symbol(j, xi); };
  if (oversample == 1)
    return peetre_maximal_of_band(plan.apply(sym, f), j, s, with_derivative, workers);

  const Grid fine(f.grid.x_min(), f.grid.x_max(),
                  (f.grid.n_points() - 1) * oversample + 1);
  const FunctionSample band = plan.apply_on(sym, f, fine);
  const FunctionSample sup_fine = peetre_maximal_of_band(band, j, s, with_derivative, workers);
  FunctionSample out(f.grid);
  for (int i = 0; i < f.grid.n_points(); ++i) out.values[i] = sup_fine.values[i * oversample];
  return out;
}

}  // namespace ptspec
