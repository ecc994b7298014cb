#pragma once

#include <optional>
#include <vector>

#include "ptspec/errors.hpp"

namespace ptspec {

/// Quadrature in the spectral variable k. Node spacing is tied to the spatial
/// extent L so that e^{ik(x-y)} is resolved: spacing <= pi / (2 L).
struct KQuadrature {
  std::vector<double> nodes;    // strictly increasing
  std::vector<double> weights;  // positive
  std::optional<int> band;      // dyadic band label; nullopt = full range

  static double max_spacing(double extent) { return 3.14159265358979323846 / (2.0 * extent); }

  /// Symmetric trapezoid nodes on [-k_max, k_max] avoiding k = 0 (even count).
  static KQuadrature full_range(double k_max, double extent, double refine = 1.0);

  /// Two symmetric segments +-[2^{(j-2)/2}, 2^{j/2}], the k-support of the
  /// band-j window phi(2^{-j} k^2). Valid for any j, including negative.
  static KQuadrature dyadic_band(int j, double extent, int min_nodes_per_side = 65);

  /// |k| <= 1, the support of the low-energy window Phi(k^2).
  static KQuadrature low_energy(double extent);

  double k_max() const { return nodes.empty() ? 0.0 : nodes.back(); }
  double spacing_bound() const;  // largest gap between adjacent nodes within a segment
};

}  // namespace ptspec
