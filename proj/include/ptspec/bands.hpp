#pragma once

#include <memory>

#include "ptspec/spectral.hpp"

namespace ptspec {

/// The dyadic band functions {phi_j(H) f} for j in [min_band, max_band].
struct BandDecomposition {
  Grid grid;
  int min_band = 0;
  std::vector<FunctionSample> bands;

  int max_band() const { return min_band + static_cast<int>(bands.size()) - 1; }
  const FunctionSample& band(int j) const { return bands.at(j - min_band); }
  FunctionSample& band(int j) { return bands.at(j - min_band); }
};

/// Analysis / synthesis bank for one (potential, grid, window system) triple.
/// Each band owns a DistortedTransform on its own k-quadrature, so repeated
/// analysis calls cost two GEMVs per band. Negative bands realize the
/// homogeneous calculus; band 0 is the low-energy window Phi.
class BandOperator {
 public:
  /// homogeneous = true drops the Phi block: every band j (any sign) uses
  /// the dilated window phi(2^{-j} xi). Otherwise min_band must be 0 and
  /// band 0 is Phi.
  BandOperator(const Potential& pot, const Grid& grid, const DyadicSystem& system,
               int min_band, int max_band, unsigned workers = 0, bool homogeneous = false);

  int min_band() const { return min_band_; }
  int max_band() const { return min_band_ + static_cast<int>(plans_.size()) - 1; }
  const DyadicSystem& system() const { return system_; }
  const Potential& potential() const { return pot_; }

  /// phi_j(H) f.
  FunctionSample band_apply(int j, const FunctionSample& f) const;
  /// Same band evaluated on a different (e.g. oversampled) output grid.
  FunctionSample band_apply_on(int j, const FunctionSample& f, const Grid& out) const;

  BandDecomposition analysis(const FunctionSample& f) const;
  /// sum_j psi_j(H) bands[j].
  FunctionSample synthesis(const BandDecomposition& bands) const;

 private:
  const DistortedTransform& plan(int j) const { return *plans_.at(j - min_band_); }

  Potential pot_;
  Grid grid_;
  DyadicSystem system_;
  int min_band_;
  unsigned workers_;
  bool homogeneous_;
  std::vector<std::unique_ptr<DistortedTransform>> plans_;
};

/// One-shot wrappers over a fresh bank (bands 0..max_band).
BandDecomposition analysis(const FunctionSample& f, const DyadicSystem& system,
                           const Potential& pot, int max_band, unsigned workers = 0);
FunctionSample synthesis(const BandDecomposition& bands, const DyadicSystem& system,
                         const Potential& pot, unsigned workers = 0);

}  // namespace ptspec
