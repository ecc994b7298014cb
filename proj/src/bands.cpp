#include "ptspec/bands.hpp"

#include "ptspec/parallel.hpp"

namespace ptspec {

BandOperator::BandOperator(const Potential& pot, const Grid& grid, const DyadicSystem& system,
                           int min_band, int max_band, unsigned workers, bool homogeneous)
    : pot_(pot), grid_(grid), system_(system), min_band_(min_band), workers_(workers),
      homogeneous_(homogeneous) {
  if (max_band < min_band) throw InvalidParameter("BandOperator: empty band range");
  if (!homogeneous && min_band != 0)
    throw InvalidParameter("BandOperator: inhomogeneous decomposition starts at band 0");
  if (max_band > max_band_for(grid))
    throw ResolutionError("BandOperator: max band exceeds the grid Nyquist bound");
  plans_.resize(static_cast<size_t>(max_band - min_band) + 1);
  // Bands are independent; plan construction is the expensive part.
  parallel_for(plans_.size(), workers, [&](size_t idx) {
    const int j = min_band + static_cast<int>(idx);
    const KQuadrature kq = (j == 0 && !homogeneous)
                               ? KQuadrature::low_energy(grid.extent())
                               : KQuadrature::dyadic_band(j, grid.extent());
    plans_[idx] = std::make_unique<DistortedTransform>(pot, grid, kq, 1);
  });
}

FunctionSample BandOperator::band_apply(int j, const FunctionSample& f) const {
  return band_apply_on(j, f, grid_);
}

FunctionSample BandOperator::band_apply_on(int j, const FunctionSample& f,
                                           const Grid& out) const {
  const Symbol sym = [this, j](double xi) {
    return homogeneous_ ? system_.homogeneous_symbol(j, xi) : system_.band_symbol(j, xi);
  };
  return plan(j).apply_on(sym, f, out);
}

BandDecomposition BandOperator::analysis(const FunctionSample& f) const {
  BandDecomposition out{grid_, min_band_, {}};
  out.bands.assign(plans_.size(), FunctionSample(grid_));
  parallel_for(plans_.size(), workers_, [&](size_t idx) {
    out.bands[idx] = band_apply(min_band_ + static_cast<int>(idx), f);
  });
  return out;
}

FunctionSample BandOperator::synthesis(const BandDecomposition& bands) const {
  if (bands.min_band != min_band_ ||
      bands.max_band() != max_band() || !(bands.grid == grid_))
    throw InvalidParameter("BandOperator::synthesis: decomposition shape mismatch");
  std::vector<FunctionSample> parts(plans_.size(), FunctionSample(grid_));
  parallel_for(plans_.size(), workers_, [&](size_t idx) {
    // psi = phi for the square-root systems
    parts[idx] = band_apply(min_band_ + static_cast<int>(idx), bands.bands[idx]);
  });
  FunctionSample out(grid_);
  for (const auto& p : parts) out = out + p;
  return out;
}

BandDecomposition analysis(const FunctionSample& f, const DyadicSystem& system,
                           const Potential& pot, int max_band, unsigned workers) {
  return BandOperator(pot, f.grid, system, 0, max_band, workers).analysis(f);
}

FunctionSample synthesis(const BandDecomposition& bands, const DyadicSystem& system,
                         const Potential& pot, unsigned workers) {
  return BandOperator(pot, bands.grid, system, bands.min_band, bands.max_band(), workers)
      .synthesis(bands);
}

}  // namespace ptspec
