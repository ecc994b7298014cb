#pragma once

#include <string>

#include "ptspec/bands.hpp"
#include "ptspec/maximal.hpp"
#include "ptspec/norms.hpp"

namespace ptspec {

enum class Family { triebel_lizorkin, besov };
enum class NormVariant { plain, peetre };

/// Which quasi-norm to compute: family F puts the Lp norm outside the
/// weighted l^q band sum, family B exchanges the two. The homogeneous flag
/// switches to the all-dilates family (no low-energy block), truncated at
/// min_band. variant = peetre replaces the bands by their Peetre maximal
/// functions (requires s > 1/min(p,q)).
struct NormSpec {
  Family family = Family::triebel_lizorkin;
  double alpha = 0.0;
  double p = 2.0;
  double q = 2.0;
  bool homogeneous = false;
  int min_band = 0;  // used only when homogeneous
  int max_band = 6;
  double s = 3.0;
  NormVariant variant = NormVariant::plain;

  void validate() const;
};

/// Quasi-norm evaluated from a precomputed decomposition (plain variant).
double quasi_norm(const BandDecomposition& bands, const NormSpec& spec);

/// Peetre-maximal variant from the same decomposition.
double quasi_norm_peetre(const BandDecomposition& bands, const NormSpec& spec,
                         unsigned workers = 0);

/// Full evaluation: decompose then reduce. Honors spec.variant.
double space_norm(const FunctionSample& f, const NormSpec& spec, const DyadicSystem& system,
                  const Potential& pot, unsigned workers = 0);

// Spec'd entry points; family taken from the name.
double tl_norm(const FunctionSample& f, const NormSpec& spec, const DyadicSystem& system,
               const Potential& pot, unsigned workers = 0);
double besov_norm(const FunctionSample& f, const NormSpec& spec, const DyadicSystem& system,
                  const Potential& pot, unsigned workers = 0);
double maximal_norm(const FunctionSample& f, const NormSpec& spec, const DyadicSystem& system,
                    const Potential& pot, unsigned workers = 0);

struct BatteryEntry {
  std::string id;
  FunctionSample f;
};

/// The fixed test battery: Gaussians at three widths and two centers, two
/// sech bumps, a chirped Gaussian, three band-limited functions synthesized
/// in bands 1..3, and the bound states of the potential.
std::vector<BatteryEntry> make_battery(const Potential& pot, const Grid& grid,
                                       unsigned workers = 0);

/// The ten entries quoted by round-trip style checks (excludes bound states
/// and the widest band-limited entry).
std::vector<BatteryEntry> battery_core10(const Potential& pot, const Grid& grid,
                                         unsigned workers = 0);

struct RatioStats {
  std::vector<std::string> ids;
  std::vector<double> ratios;
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  bool anomaly = false;  // zero norm on a nonzero function
  bool pass = false;
};

/// normA / normB per battery function across two window systems.
RatioStats equivalence_experiment(const DyadicSystem& system_a, const DyadicSystem& system_b,
                                  const NormSpec& spec, const std::vector<BatteryEntry>& battery,
                                  const Potential& pot, double bound = 50.0,
                                  unsigned workers = 0);

/// Identification against the free operator: ratios of the H-norm to the
/// same-index norm of H_0 (which realizes the classical space with doubled
/// smoothness), or to the plain Lp norm when spec is F with alpha = 0 and
/// q = 2.
enum class IdentificationTarget { free_operator, lp };

RatioStats identification_experiment(const NormSpec& spec,
                                     const std::vector<BatteryEntry>& battery,
                                     const Potential& pot, IdentificationTarget target,
                                     const DyadicSystem& system, unsigned workers = 0);

}  // namespace ptspec
