#pragma once

#include "ptspec/spaces.hpp"

namespace ptspec {

/// e^{-itH} f through the spectral representation: the continuous amplitudes
/// pick up e^{-itk^2}, the bound-state amplitudes e^{-it lambda_m}. Exact in
/// the discrete representation; requires |t| k_max dk <= pi/4 so the phase
/// oscillation is resolved on the quadrature.
FunctionSample propagate(const FunctionSample& f, const Potential& pot, double t,
                         const KQuadrature& kq, unsigned workers = 0);

/// Reusable plan: one wave matrix, many times.
class Propagator {
 public:
  /// The quadrature is refined so every |t| <= t_max is admissible.
  Propagator(const Potential& pot, const Grid& grid, double k_max, double t_max,
             unsigned workers = 0);

  FunctionSample operator()(const FunctionSample& f, double t) const;
  const KQuadrature& kquad() const { return plan_.kquad(); }

 private:
  DistortedTransform plan_;
};

struct EvolutionResult {
  std::vector<double> times;
  std::vector<FunctionSample> states;
};

EvolutionResult evolve(const FunctionSample& f, const Potential& pot,
                       const std::vector<double>& times, const Grid& grid,
                       double k_max = 8.0, unsigned workers = 0);

struct DecayCurve {
  double beta = 0.0;
  std::vector<double> times;
  std::vector<double> norm_out;  // ||psi(t)||_out
  std::vector<double> bound;     // <t>^beta ||f||_in
  std::vector<double> ratio;     // norm_out / bound
  bool pass = false;
};

/// Dispersive-decay experiment: out_spec.alpha + 2 beta = in_spec.alpha with
/// beta = |1/2 - 1/p|. Ratios must stay bounded; the pass rule requires the
/// whole curve below 1.5x its maximum on t <= 5. Throws PreconditionError
/// when more than 1% of the L2 mass reaches the outer 5% of the grid.
DecayCurve decay_experiment(const FunctionSample& f, const Potential& pot,
                            const NormSpec& out_spec, const NormSpec& in_spec,
                            const std::vector<double>& times, const DyadicSystem& system,
                            double k_max = 8.0, unsigned workers = 0);

}  // namespace ptspec
