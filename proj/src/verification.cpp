#include "ptspec/verification.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "ptspec/evolution.hpp"
#include "ptspec/ode.hpp"
#include "ptspec/parallel.hpp"
#include "ptspec/spectral.hpp"

namespace ptspec {

namespace {

using std::abs;
using std::max;

struct Sweep {
  Grid transform_grid;
  Grid kernel_grid;
  std::vector<int> kernel_bands;
  std::vector<double> times;
  int max_band;
};

Sweep make_sweep(bool quick) {
  if (quick)
    return Sweep{Grid(-40.0, 40.0, 1201), Grid(-40.0, 40.0, 201), {1, 2, 3}, {0.0, 1.0, 5.0, 8.0},
                 4};
  return Sweep{Grid(-40.0, 40.0, 4001), Grid(-60.0, 60.0, 481), {1, 2, 3, 4, 5, 6},
               {0.0, 1.0, 2.0, 5.0, 10.0, 20.0}, 6};
}

double circular_gap_mod_pi(double a, double b) {
  constexpr double kPi = 3.14159265358979323846;
  double d = std::fmod(std::abs(a - b), kPi);
  return std::min(d, kPi - d);
}

CheckResult reflectionless_check() {
  double worst = 0.0;
  for (int n : {1, 2, 3})
    for (double k : {0.25, 0.5, 1.0, 2.0, 4.0})
      for (Side side : {Side::plus, Side::minus}) {
        worst = max(worst, abs(abs(transmission(n, k, side)) - 1.0));
        worst = max(worst, abs(reflection(n, k, side)));
      }
  return {"reflectionless", "sup | |T(k)| - 1 | and |R(k)|, n in {1,2,3}", worst, 1e-12,
          worst <= 1e-12};
}

CheckResult closed_form_vs_ode_check() {
  const Grid g(-10.0, 10.0, 2001);
  double worst = 0.0;
  for (int n : {1, 2}) {
    const Potential pot = Potential::integer_level(n);
    for (double k : {0.5, 1.0, 2.0}) {
      const Complex u0 = eigenfunction(pot, g.x_max(), k);
      const Complex du0 = eigenfunction_x_derivative(pot, g.x_max(), k);
      const auto sol = integrate_schrodinger([&](double x) { return pot(x); }, k * k,
                                             g.x_max(), g.x_min(), u0, du0, g);
      double num = 0.0, den = 0.0;
      for (int i = 0; i < g.n_points(); ++i) {
        const Complex e = eigenfunction(pot, g.x(i), k);
        num = max(num, abs(sol.u.values[i] - e));
        den = max(den, abs(e));
      }
      worst = max(worst, num / den);
    }
  }
  return {"eigenfunction_ode", "closed form vs adaptive integration, relative sup norm", worst,
          1e-6, worst <= 1e-6};
}

CheckResult shooting_check() {
  double worst = 0.0;
  bool counts_ok = true;
  for (int n : {1, 2, 3}) {
    const Potential pot = Potential::integer_level(n);
    const auto found = shooting_point_spectrum(pot, n + 0.6);
    const auto expected = point_spectrum(n);
    if (found.size() != expected.size()) {
      counts_ok = false;
      continue;
    }
    for (size_t i = 0; i < found.size(); ++i) worst = max(worst, abs(found[i] - expected[i]));
  }
  return {"point_spectrum_shooting", "shooting eigenvalues vs -j^2, n in {1,2,3}", worst, 1e-6,
          counts_ok && worst <= 1e-6};
}

CheckResult roundtrip_check(const Sweep& sweep, unsigned workers) {
  double worst = 0.0;
  for (int n : {1, 2}) {
    const Potential pot = Potential::integer_level(n);
    const auto battery = battery_core10(pot, sweep.transform_grid, workers);
    const KQuadrature kq = KQuadrature::full_range(10.0, sweep.transform_grid.extent());
    const DistortedTransform plan(pot, sweep.transform_grid, kq, workers);
    std::vector<double> errs(battery.size());
    parallel_for(battery.size(), workers, [&](size_t i) {
      errs[i] = relative_l2_error(plan.inverse(plan.forward(battery[i].f)), battery[i].f);
    });
    for (double e : errs) worst = max(worst, e);
  }
  return {"completeness_roundtrip", "inverse(forward(f)) relative L2 error, 10-function battery",
          worst, 1e-4, worst <= 1e-4};
}

CheckResult kernel_decay_check(const Sweep& sweep, unsigned workers) {
  const Potential pot = Potential::integer_level(2);
  const DyadicSystem sys = DyadicSystem::build("sqrt-partition");
  double worst_spread = 0.0;
  bool finite = true;
  std::vector<MultiplierKernel> kernels;
  for (int j : sweep.kernel_bands)
    kernels.push_back(build_band_kernel(sys, j, pot, sweep.kernel_grid, true, workers));
  for (int npow : {2, 3}) {
    double cmin = kInfinity, cmax = 0.0, dmin = kInfinity, dmax = 0.0;
    for (const auto& k : kernels) {
      const auto prof = decay_profile(k, npow);
      finite = finite && std::isfinite(prof.c_measured) && std::isfinite(prof.d_measured);
      cmin = std::min(cmin, prof.c_measured);
      cmax = max(cmax, prof.c_measured);
      dmin = std::min(dmin, prof.d_measured);
      dmax = max(dmax, prof.d_measured);
    }
    worst_spread = max(worst_spread, cmax / cmin);
    worst_spread = max(worst_spread, dmax / dmin);
    // low-energy band: (1 + |x-y|)^{-n} profile must carry a finite constant
    const auto k0 = build_band_kernel(sys, 0, pot, sweep.kernel_grid, false, workers);
    finite = finite && std::isfinite(decay_profile(k0, npow).c_measured);
  }
  return {"kernel_decay", "max over n_power of (max_j / min_j) for C and D measured constants",
          worst_spread, 10.0, finite && worst_spread <= 10.0};
}

CheckResult maximal_check(const Sweep& sweep, unsigned workers) {
  const Potential pot = Potential::integer_level(1);
  const DyadicSystem sys = DyadicSystem::build("sqrt-partition");
  const auto full = make_battery(pot, sweep.transform_grid, workers);
  const std::vector<BatteryEntry> battery(full.begin(), full.begin() + 5);
  const int jmax = std::min(5, sweep.max_band);
  BandOperator bank(pot, sweep.transform_grid, sys, 0, jmax, workers);
  double worst_der = 0.0;
  double worst_hl = 0.0;
  for (const auto& entry : battery) {
    for (int j = 1; j <= jmax; ++j) {
      const FunctionSample band = bank.band_apply(j, entry.f);
      const FunctionSample star = peetre_maximal_of_band(band, j, 3.0, false, workers);
      const FunctionSample star2 = peetre_maximal_of_band(band, j, 3.0, true, workers);
      const double lam = std::pow(2.0, j / 2.0);
      // phi**(x) <= C 2^{j/2} phi*(x)
      for (int i = 0; i < band.grid.n_points(); ++i) {
        const double denom = lam * star.values[i].real();
        if (denom > 0.0) worst_der = max(worst_der, star2.values[i].real() / denom);
      }
      // phi*(x) <= C [M(|phi_j f|^r)]^{1/r}(x) at r = 1/2
      FunctionSample root(band.grid);
      for (int i = 0; i < band.grid.n_points(); ++i)
        root.values[i] = std::sqrt(abs(band.values[i]));
      const FunctionSample m = hl_maximal(root);
      for (int i = 0; i < band.grid.n_points(); ++i) {
        const double denom = m.values[i].real() * m.values[i].real();
        if (denom > 0.0) worst_hl = max(worst_hl, star.values[i].real() / denom);
      }
    }
  }
  const double value = max(worst_der, worst_hl);
  return {"maximal_inequalities",
          "sup ratios for the derivative and Hardy-Littlewood maximal bounds",
          value, kInfinity, std::isfinite(value) && value > 0.0};
}

CheckResult equivalence_check(const Sweep& sweep, unsigned workers) {
  const DyadicSystem a = DyadicSystem::build("sqrt-partition");
  const DyadicSystem b = DyadicSystem::build("shifted-sqrt");
  struct Tuple { double alpha, p, q; };
  double worst = 0.0;
  bool pass = true;
  for (int n : {0, 1, 2}) {
    const Potential pot = Potential::integer_level(n);
    const auto battery = make_battery(pot, sweep.transform_grid, workers);
    for (const Tuple& t : {Tuple{0.0, 2.0, 2.0}, Tuple{1.0, 1.5, 1.5}, Tuple{0.5, 3.0, 2.0}}) {
      NormSpec spec;
      spec.family = Family::triebel_lizorkin;
      spec.alpha = t.alpha;
      spec.p = t.p;
      spec.q = t.q;
      spec.max_band = sweep.max_band;
      const auto stats = equivalence_experiment(a, b, spec, battery, pot, 50.0, workers);
      pass = pass && stats.pass;
      worst = max(worst, max(stats.max_ratio, 1.0 / stats.min_ratio));
    }
  }
  return {"norm_equivalence", "window-system independence: sup of max(ratio, 1/ratio)", worst,
          50.0, pass && worst <= 50.0};
}

CheckResult lp_identification_check(const Sweep& sweep, unsigned workers) {
  const DyadicSystem sys = DyadicSystem::build("sqrt-partition");
  const double window = std::sqrt(3.0) * 1.1;
  bool pass = true;
  double worst_p2 = 0.0;
  for (int n : {1, 2}) {
    const Potential pot = Potential::integer_level(n);
    const auto battery = make_battery(pot, sweep.transform_grid, workers);
    for (double p : {1.5, 2.0, 3.0}) {
      NormSpec spec;
      spec.family = Family::triebel_lizorkin;
      spec.alpha = 0.0;
      spec.p = p;
      spec.q = 2.0;
      spec.max_band = sweep.max_band;
      const auto stats = identification_experiment(spec, battery, pot,
                                                   IdentificationTarget::lp, sys, workers);
      pass = pass && stats.pass;  // finite, nonzero ratios at every p
      if (p == 2.0) {
        worst_p2 = max(worst_p2, max(stats.max_ratio, 1.0 / stats.min_ratio));
        pass = pass && stats.max_ratio <= window && stats.min_ratio >= 1.0 / window;
      }
    }
  }
  return {"lp_identification",
          "F^{0,2}_p vs L^p ratios finite (p in {1.5,2,3}); p = 2 within sqrt(3) + 10%",
          worst_p2, window, pass};
}

CheckResult besov_identification_check(const Sweep& sweep, unsigned workers) {
  const DyadicSystem sys = DyadicSystem::build("sqrt-partition");
  double worst_spread = 0.0;
  bool pass = true;
  for (int n : {1, 2}) {
    const Potential pot = Potential::integer_level(n);
    const auto battery = make_battery(pot, sweep.transform_grid, workers);
    NormSpec spec;
    spec.family = Family::besov;
    spec.alpha = 0.5;
    spec.p = 2.0;
    spec.q = 2.0;
    spec.max_band = sweep.max_band;
    const auto stats = identification_experiment(spec, battery, pot,
                                                 IdentificationTarget::free_operator, sys,
                                                 workers);
    pass = pass && stats.pass;
    worst_spread = max(worst_spread, stats.max_ratio / stats.min_ratio);
  }
  return {"besov_identification",
          "H-Besov vs free-operator Besov (classical with doubled smoothness), ratio spread",
          worst_spread, kInfinity, pass && std::isfinite(worst_spread)};
}

CheckResult time_decay_check(const Sweep& sweep, unsigned workers) {
  const DyadicSystem sys = DyadicSystem::build("sqrt-partition");
  const Potential pot = Potential::integer_level(1);
  const FunctionSample f = sample(sweep.transform_grid, [](double x) {
    return Complex(std::exp(-x * x / 18.0));  // sigma = 3, ~unit bandwidth
  });
  // p = 2: beta = 0, the ratio curve must be flat
  NormSpec out2;
  out2.family = Family::besov;
  out2.alpha = 0.5;
  out2.p = 2.0;
  out2.q = 2.0;
  out2.max_band = sweep.max_band;
  NormSpec in2 = out2;
  const auto curve2 = decay_experiment(f, pot, out2, in2, sweep.times, sys, 4.0, workers);
  double flat_dev = 0.0;
  for (double r : curve2.ratio) flat_dev = max(flat_dev, abs(r - curve2.ratio.front()));
  flat_dev /= curve2.ratio.front();

  // p = 1: beta = 1/2
  NormSpec out1;
  out1.family = Family::besov;
  out1.alpha = 0.5;
  out1.p = 1.0;
  out1.q = 1.5;
  out1.max_band = sweep.max_band;
  NormSpec in1 = out1;
  in1.alpha = out1.alpha + 1.0;
  const auto curve1 = decay_experiment(f, pot, out1, in1, sweep.times, sys, 4.0, workers);

  const bool pass = flat_dev <= 1e-3 && curve1.pass;
  return {"time_decay", "p=2 ratio flatness (<=1e-3) and p=1 dispersive ratio trend",
          max(flat_dev, curve1.pass ? 0.0 : kInfinity), 1e-3, pass};
}

CheckResult continuous_lambda_check(const Sweep& sweep) {
  double worst_cons = 0.0;
  double worst_phase = 0.0;
  for (double lam : {1.5, 2.5, 3.3}) {
    for (double k : {0.5, 1.0, 2.0}) {
      const auto gamma_route = continuous_scattering(lam, 1.0, k);
      worst_cons = max(worst_cons, abs(std::norm(gamma_route.transmission) +
                                       std::norm(gamma_route.reflection) - 1.0));
      const auto ode_route = ode_phase_extraction(lam, 1.0, k, sweep.transform_grid);
      worst_phase = max(worst_phase,
                        circular_gap_mod_pi(gamma_route.phi_even, ode_route.phi_even));
      worst_phase = max(worst_phase,
                        circular_gap_mod_pi(gamma_route.phi_odd, ode_route.phi_odd));
    }
  }
  const auto integer_case = continuous_scattering(2.0, 1.0, 1.0);
  const double t_dev = abs(abs(integer_case.transmission) - 1.0);
  const bool pass = worst_cons <= 1e-10 && worst_phase <= 1e-4 && t_dev <= 1e-10;
  return {"continuous_lambda",
          "conservation law, Gamma-vs-ODE phases (<=1e-4), integer-limit |T| = 1",
          max(worst_phase, max(worst_cons, t_dev)), 1e-4, pass};
}

CheckResult covariance_check_criterion(unsigned workers) {
  const Potential pot = Potential::integer_level(1);
  const Symbol symbol = [](double xi) { return std::exp(-(xi - 2.0) * (xi - 2.0)); };
  const Grid g(-28.0, 28.0, 801);
  const auto report = covariance_check(pot, symbol, 3.5, 2.0, 3.0, g, workers);
  const double worst = max(report.scale_deviation, report.shift_deviation);
  return {"covariance", "scaling and translation kernel identities, sup deviation", worst, 1e-6,
          worst <= 1e-6};
}

CheckResult orthogonality_check(const Sweep& sweep) {
  double worst = 0.0;
  worst = max(worst, abs(orthogonality_integral(1.0, 1.0, sweep.transform_grid)));
  worst = max(worst, abs(orthogonality_integral(2.0, 0.7, sweep.transform_grid)));
  return {"orthogonality_integral", "bound-vs-propagating orthogonality integral", worst, 1e-8,
          worst <= 1e-8};
}

}  // namespace

std::vector<CheckResult> run_acceptance(const VerifyOptions& options) {
  const Sweep sweep = make_sweep(options.quick);
  const unsigned workers = options.workers;
  std::vector<CheckResult> results;
  results.push_back(reflectionless_check());
  results.push_back(closed_form_vs_ode_check());
  results.push_back(shooting_check());
  results.push_back(roundtrip_check(sweep, workers));
  results.push_back(kernel_decay_check(sweep, workers));
  results.push_back(maximal_check(sweep, workers));
  results.push_back(equivalence_check(sweep, workers));
  results.push_back(lp_identification_check(sweep, workers));
  results.push_back(besov_identification_check(sweep, workers));
  results.push_back(time_decay_check(sweep, workers));
  results.push_back(continuous_lambda_check(sweep));
  results.push_back(covariance_check_criterion(workers));
  results.push_back(orthogonality_check(sweep));
  return results;
}

void write_report_json(const std::filesystem::path& path,
                       const std::vector<CheckResult>& results) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_report_json: cannot open " + path.string());
  out.precision(17);
  out << "[\n";
  for (size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i];
    out << "  {\"check_id\": \"" << r.id << "\", \"property\": \"" << r.description
        << "\", \"value\": " << r.value << ", \"threshold\": ";
    if (std::isfinite(r.threshold))
      out << r.threshold;
    else
      out << "\"finite\"";
    out << ", \"pass\": " << (r.pass ? "true" : "false") << '}'
        << (i + 1 < results.size() ? "," : "") << '\n';
  }
  out << "]\n";
}

std::vector<double> shooting_point_spectrum(const Potential& pot, double mu_max,
                                            double boundary, int scan_points, double tol) {
  if (!(mu_max > 0.0)) throw InvalidParameter("shooting_point_spectrum: mu_max must be > 0");
  const double L = boundary;
  const Grid ends_left(-L, 0.0, 2);
  const Grid ends_right(0.0, L, 2);
  auto potential = [&](double x) { return pot(x); };

  // normalized matching Wronskian at x = 0
  auto mismatch = [&](double mu) {
    const double e = -mu * mu;
    const auto left = integrate_schrodinger(potential, e, -L, 0.0, 1.0, mu, ends_left);
    const auto right = integrate_schrodinger(potential, e, L, 0.0, 1.0, -mu, ends_right);
    const Complex u = left.u.values[1], du = left.du.values[1];
    const Complex v = right.u.values[0], dv = right.du.values[0];
    const double w = (u * dv - du * v).real();
    const double scale = abs(u * dv) + abs(du * v) + 1e-300;
    return w / scale;
  };

  std::vector<double> eigenvalues;
  double prev_mu = mu_max / scan_points * 0.1;
  double prev_w = mismatch(prev_mu);
  for (int i = 1; i <= scan_points; ++i) {
    const double mu = mu_max * i / scan_points;
    const double w = mismatch(mu);
    if (prev_w == 0.0) eigenvalues.push_back(-prev_mu * prev_mu);
    if (prev_w * w < 0.0) {
      double lo = prev_mu, hi = mu, wlo = prev_w;
      while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        const double wm = mismatch(mid);
        if (wm == 0.0) {
          lo = hi = mid;
          break;
        }
        if (wlo * wm < 0.0) {
          hi = mid;
        } else {
          lo = mid;
          wlo = wm;
        }
      }
      const double mu_star = 0.5 * (lo + hi);
      eigenvalues.push_back(-mu_star * mu_star);
    }
    prev_mu = mu;
    prev_w = w;
  }
  return eigenvalues;
}

}  // namespace ptspec
