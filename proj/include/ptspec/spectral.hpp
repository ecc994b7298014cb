#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <functional>
#include <optional>

#include "ptspec/dyadic.hpp"
#include "ptspec/grid.hpp"
#include "ptspec/kquad.hpp"
#include "ptspec/potential.hpp"
#include "ptspec/scattering.hpp"

namespace ptspec {

using Symbol = std::function<double(double)>;  // of the spectral variable xi

struct TransformCoefficients {
  KQuadrature kquad;
  std::vector<Complex> ac_values;  // one per k node
  std::vector<Complex> pp_values;  // one per bound state
};

/// Generalized Fourier transform adapted to H: analysis against the distorted
/// plane waves e(x,k) plus the bound-state projections. Analysis carries no
/// prefactor; synthesis carries (2 pi)^{-1} on the continuous part. The wave
/// matrix is precomputed, so repeated transforms on one plan are two GEMVs.
class DistortedTransform {
 public:
  DistortedTransform(const Potential& pot, const Grid& grid, KQuadrature kquad,
                     unsigned workers = 0);

  const Potential& potential() const { return pot_; }
  const Grid& grid() const { return grid_; }
  const KQuadrature& kquad() const { return kq_; }
  const std::vector<BoundState>& bound_states() const { return bound_; }

  TransformCoefficients forward(const FunctionSample& f) const;
  FunctionSample inverse(const TransformCoefficients& coeffs) const;
  /// Synthesis onto an arbitrary output grid (same coefficients).
  FunctionSample inverse_on(const TransformCoefficients& coeffs, const Grid& out) const;
  /// Transform-side multiplier: scale ac by symbol(k^2), pp by symbol(lambda_m).
  FunctionSample apply(const Symbol& symbol, const FunctionSample& f) const;
  FunctionSample apply_on(const Symbol& symbol, const FunctionSample& f,
                          const Grid& out) const;

 private:
  Eigen::MatrixXcd wave_matrix(const Grid& g) const;  // n_k x n_points

  Potential pot_;
  Grid grid_;
  KQuadrature kq_;
  unsigned workers_;
  Eigen::MatrixXcd waves_;     // e(x_i, k_m)
  Eigen::VectorXd wx_, wk_;    // trapezoid weights in x and k
  std::vector<BoundState> bound_;
  Eigen::MatrixXd bound_mat_;  // n_bound x n_points (bound states are real)
};

// Convenience one-shot wrappers.
TransformCoefficients forward_transform(const FunctionSample& f, const Potential& pot,
                                        const KQuadrature& kq);
FunctionSample inverse_transform(const TransformCoefficients& coeffs, const Potential& pot,
                                 const Grid& grid);
FunctionSample apply_multiplier(const Symbol& symbol, const FunctionSample& f,
                                const Potential& pot, const KQuadrature& kq);

/// Dense kernel of one dyadic band of the multiplier calculus, restricted to
/// the absolutely continuous part. Assembled from the analytic product form
/// R(x,y,k) e^{ik(x-y)}, which stays smooth across k = 0.
struct MultiplierKernel {
  int band = 0;
  Grid grid;
  Eigen::MatrixXcd matrix;
  std::optional<Eigen::MatrixXcd> dmatrix;  // d/dx of the kernel when requested
};

/// Largest dyadic band the grid can resolve: 2^{j/2} <= pi / spacing.
int max_band_for(const Grid& grid);

MultiplierKernel build_band_kernel(const DyadicSystem& system, int j, const Potential& pot,
                                   const Grid& grid, bool with_derivative = false,
                                   unsigned workers = 0);

/// Kernel-quadrature application of the band operator: integrates the dense
/// kernel against f and adds the pure-point part of the band symbol.
FunctionSample apply_band_kernel(const MultiplierKernel& kernel, const DyadicSystem& system,
                                 const Potential& pot, const FunctionSample& f);

struct DecayProfile {
  double c_measured;  // sup |K_j(x,y)| w_j(x-y)^n / 2^{j/2}
  double d_measured;  // sup |dK_j(x,y)| w_j(x-y)^n / 2^j  (NaN without dmatrix)
};

DecayProfile decay_profile(const MultiplierKernel& kernel, int n_power);

struct CovarianceReport {
  double scale_deviation;  // sup |phi(a^{-2} H_a)(x,y) - a phi(H)(ax, ay)|
  double shift_deviation;  // sup |phi(H_h)(x,y) - phi(H)(x-h, y-h)|
};

/// Checks the scaling and translation covariance of the full multiplier
/// kernel (continuous plus bound-state part) for a compactly supported
/// symbol with k-support inside [-k_max, k_max].
CovarianceReport covariance_check(const Potential& pot, const Symbol& symbol, double k_max,
                                  double scale, double shift, const Grid& grid,
                                  unsigned workers = 0);

// Kernel export: CSV rows "x,y,re,im" and a little-endian binary dump.
void write_kernel_csv(const std::filesystem::path& path, const MultiplierKernel& kernel);
void write_kernel_binary(const std::filesystem::path& path, const MultiplierKernel& kernel);
MultiplierKernel read_kernel_binary(const std::filesystem::path& path);

}  // namespace ptspec
