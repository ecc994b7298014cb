#include "ptspec/evolution.hpp"

#include <cmath>

#include "ptspec/parallel.hpp"

namespace ptspec {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_phase_resolution(double t, const KQuadrature& kq) {
  const double dk = kq.spacing_bound();
  if (std::abs(t) * kq.k_max() * dk > kPi / 4.0 + 1e-12)
    throw ResolutionError("propagate: |t| k_max dk > pi/4, refine the k quadrature");
}

FunctionSample propagate_on_plan(const DistortedTransform& plan, const FunctionSample& f,
                                 double t) {
  check_phase_resolution(t, plan.kquad());
  TransformCoefficients c = plan.forward(f);
  for (size_t m = 0; m < c.ac_values.size(); ++m) {
    const double k = plan.kquad().nodes[m];
    c.ac_values[m] *= std::polar(1.0, -t * k * k);
  }
  const auto& bs = plan.bound_states();
  for (size_t b = 0; b < c.pp_values.size(); ++b)
    c.pp_values[b] *= std::polar(1.0, -t * bs[b].eigenvalue);
  return plan.inverse(c);
}

}  // namespace

FunctionSample propagate(const FunctionSample& f, const Potential& pot, double t,
                         const KQuadrature& kq, unsigned workers) {
  return propagate_on_plan(DistortedTransform(pot, f.grid, kq, workers), f, t);
}

Propagator::Propagator(const Potential& pot, const Grid& grid, double k_max, double t_max,
                       unsigned workers)
    : plan_(pot, grid,
            KQuadrature::full_range(
                k_max, grid.extent(),
                std::max(1.0, std::abs(t_max) * k_max * KQuadrature::max_spacing(grid.extent()) /
                                  (kPi / 4.0))),
            workers) {}

FunctionSample Propagator::operator()(const FunctionSample& f, double t) const {
  return propagate_on_plan(plan_, f, t);
}

EvolutionResult evolve(const FunctionSample& f, const Potential& pot,
                       const std::vector<double>& times, const Grid& grid, double k_max,
                       unsigned workers) {
  double t_max = 0.0;
  for (double t : times) t_max = std::max(t_max, std::abs(t));
  const Propagator prop(pot, grid, k_max, t_max, workers);
  EvolutionResult out;
  out.times = times;
  out.states.assign(times.size(), FunctionSample(grid));
  parallel_for(times.size(), workers, [&](size_t i) { out.states[i] = prop(f, times[i]); });
  return out;
}

DecayCurve decay_experiment(const FunctionSample& f, const Potential& pot,
                            const NormSpec& out_spec, const NormSpec& in_spec,
                            const std::vector<double>& times, const DyadicSystem& system,
                            double k_max, unsigned workers) {
  out_spec.validate();
  in_spec.validate();
  const double beta = std::abs(0.5 - 1.0 / out_spec.p);
  if (out_spec.p != in_spec.p || out_spec.q != in_spec.q)
    throw InvalidParameter("decay_experiment: in/out specs must share p and q");
  if (std::abs(in_spec.alpha - (out_spec.alpha + 2.0 * beta)) > 1e-12)
    throw InvalidParameter("decay_experiment: needs in.alpha = out.alpha + 2|1/2 - 1/p|");

  const EvolutionResult states = evolve(f, pot, times, f.grid, k_max, workers);
  const double norm_in = space_norm(f, in_spec, system, pot, workers);

  // mass-leakage guard on the outer 5% of the grid
  const double edge = 0.05 * f.grid.extent();
  auto leaked = [&](const FunctionSample& g) {
    const auto w = g.grid.trapezoid_weights();
    double total = 0.0, outer = 0.0;
    for (int i = 0; i < g.grid.n_points(); ++i) {
      const double m = w[i] * std::norm(g.values[i]);
      total += m;
      const double x = g.grid.x(i);
      if (x < g.grid.x_min() + edge || x > g.grid.x_max() - edge) outer += m;
    }
    return outer > 0.01 * total;
  };

  DecayCurve curve;
  curve.beta = beta;
  curve.times = times;
  curve.norm_out.resize(times.size());
  curve.bound.resize(times.size());
  curve.ratio.resize(times.size());
  for (size_t i = 0; i < times.size(); ++i) {
    if (leaked(states.states[i]))
      throw PreconditionError("decay_experiment: wave packet reached the grid boundary");
    curve.norm_out[i] = space_norm(states.states[i], out_spec, system, pot, workers);
    const double jt = std::sqrt(1.0 + times[i] * times[i]);  // <t>
    curve.bound[i] = std::pow(jt, beta) * norm_in;
    curve.ratio[i] = curve.norm_out[i] / curve.bound[i];
  }

  double early = 0.0, overall = 0.0;
  for (size_t i = 0; i < times.size(); ++i) {
    overall = std::max(overall, curve.ratio[i]);
    if (times[i] <= 5.0) early = std::max(early, curve.ratio[i]);
  }
  curve.pass = std::isfinite(overall) && (early == 0.0 || overall <= 1.5 * early);
  return curve;
}

}  // namespace ptspec
