#include "ptspec/spaces.hpp"

#include <algorithm>
#include <cmath>

#include "ptspec/parallel.hpp"

namespace ptspec {

void NormSpec::validate() const {
  if (!(p > 0.0) || !(q > 0.0)) throw InvalidParameter("NormSpec: p, q must be positive");
  if (max_band < (homogeneous ? min_band : 0))
    throw InvalidParameter("NormSpec: empty band range");
  if (variant == NormVariant::peetre && !(s > 1.0 / std::min(p, q)))
    throw InvalidParameter("NormSpec: peetre variant needs s > 1/min(p,q)");
}

namespace {

// l^q reduction with the 2^{j alpha} weights; bands indexed from spec band range.
double weighted_lq(const std::vector<double>& vals, const std::vector<double>& w2ja,
                   double q) {
  if (q == kInfinity) {
    double m = 0.0;
    for (size_t j = 0; j < vals.size(); ++j) m = std::max(m, w2ja[j] * vals[j]);
    return m;
  }
  double s = 0.0;
  for (size_t j = 0; j < vals.size(); ++j) s += std::pow(w2ja[j] * vals[j], q);
  return std::pow(s, 1.0 / q);
}

std::vector<double> band_weights(const NormSpec& spec) {
  const int lo = spec.homogeneous ? spec.min_band : 0;
  std::vector<double> w;
  for (int j = lo; j <= spec.max_band; ++j) w.push_back(std::pow(2.0, j * spec.alpha));
  return w;
}

double reduce(const std::vector<FunctionSample>& source, const Grid& grid,
              const NormSpec& spec) {
  const auto w2ja = band_weights(spec);
  const size_t nb = source.size();
  if (spec.family == Family::triebel_lizorkin) {
    // pointwise l^q across bands, then Lp in x
    const int n = grid.n_points();
    FunctionSample inner(grid);
    std::vector<double> vals(nb);
    for (int i = 0; i < n; ++i) {
      for (size_t j = 0; j < nb; ++j) vals[j] = std::abs(source[j].values[i]);
      inner.values[i] = weighted_lq(vals, w2ja, spec.q);
    }
    return lp_norm(inner, spec.p);
  }
  // Besov: Lp per band, then weighted l^q across bands. In the inhomogeneous
  // case the low-energy block enters additively, outside the l^q sum.
  std::vector<double> per_band(nb);
  for (size_t j = 0; j < nb; ++j) per_band[j] = lp_norm(source[j], spec.p);
  if (spec.homogeneous) return weighted_lq(per_band, w2ja, spec.q);
  const double low = per_band[0];
  std::vector<double> rest(per_band.begin() + 1, per_band.end());
  std::vector<double> wrest(w2ja.begin() + 1, w2ja.end());
  return low + weighted_lq(rest, wrest, spec.q);
}

std::vector<FunctionSample> peetre_bands(const BandDecomposition& bands, const NormSpec& spec,
                                         unsigned workers) {
  std::vector<FunctionSample> out(bands.bands.size(), FunctionSample(bands.grid));
  for (size_t idx = 0; idx < bands.bands.size(); ++idx) {
    const int j = bands.min_band + static_cast<int>(idx);
    out[idx] = peetre_maximal_of_band(bands.bands[idx], j, spec.s, false, workers);
  }
  return out;
}

}  // namespace

double quasi_norm(const BandDecomposition& bands, const NormSpec& spec) {
  spec.validate();
  return reduce(bands.bands, bands.grid, spec);
}

double quasi_norm_peetre(const BandDecomposition& bands, const NormSpec& spec,
                         unsigned workers) {
  spec.validate();
  return reduce(peetre_bands(bands, spec, workers), bands.grid, spec);
}

double space_norm(const FunctionSample& f, const NormSpec& spec, const DyadicSystem& system,
                  const Potential& pot, unsigned workers) {
  spec.validate();
  const int lo = spec.homogeneous ? spec.min_band : 0;
  BandOperator bank(pot, f.grid, system, lo, spec.max_band, workers, spec.homogeneous);
  const BandDecomposition bands = bank.analysis(f);
  return spec.variant == NormVariant::peetre ? quasi_norm_peetre(bands, spec, workers)
                                             : quasi_norm(bands, spec);
}

double tl_norm(const FunctionSample& f, const NormSpec& spec, const DyadicSystem& system,
               const Potential& pot, unsigned workers) {
  NormSpec s = spec;
  s.family = Family::triebel_lizorkin;
  s.variant = NormVariant::plain;
  return space_norm(f, s, system, pot, workers);
}

double besov_norm(const FunctionSample& f, const NormSpec& spec, const DyadicSystem& system,
                  const Potential& pot, unsigned workers) {
  NormSpec s = spec;
  s.family = Family::besov;
  s.variant = NormVariant::plain;
  return space_norm(f, s, system, pot, workers);
}

double maximal_norm(const FunctionSample& f, const NormSpec& spec, const DyadicSystem& system,
                    const Potential& pot, unsigned workers) {
  NormSpec s = spec;
  s.variant = NormVariant::peetre;
  return space_norm(f, s, system, pot, workers);
}

namespace {

FunctionSample band_limited_entry(const Potential& pot, const Grid& grid, int j,
                                  unsigned workers) {
  // smooth bump over the middle of the band-j k-support
  const double k_lo = std::pow(2.0, (j - 2) / 2.0);
  const double k_hi = std::pow(2.0, j / 2.0);
  const double c = 0.5 * (k_lo + k_hi);
  const double w = 0.35 * (k_hi - k_lo);
  auto bump = [=](double k) {
    const double u = (std::abs(k) - c) / w;
    return std::abs(u) < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - u * u)) : 0.0;
  };
  const KQuadrature kq = KQuadrature::dyadic_band(j, grid.extent(), 129);
  DistortedTransform plan(pot, grid, kq, workers);
  TransformCoefficients coeffs;
  coeffs.kquad = kq;
  coeffs.ac_values.resize(kq.nodes.size());
  for (size_t m = 0; m < kq.nodes.size(); ++m) coeffs.ac_values[m] = bump(kq.nodes[m]);
  coeffs.pp_values.assign(plan.bound_states().size(), Complex(0.0));
  return plan.inverse(coeffs);
}

}  // namespace

std::vector<BatteryEntry> make_battery(const Potential& pot, const Grid& grid,
                                       unsigned workers) {
  std::vector<BatteryEntry> out;
  auto gauss = [&](double sigma, double center) {
    return sample(grid, [=](double x) {
      const double u = (x - center) / sigma;
      return Complex(std::exp(-0.5 * u * u));
    });
  };
  out.push_back({"gauss_w1_c0", gauss(1.0, 0.0)});
  out.push_back({"gauss_w2_c0", gauss(2.0, 0.0)});
  out.push_back({"gauss_w07_c0", gauss(0.7, 0.0)});
  out.push_back({"gauss_w1_c3", gauss(1.0, 3.0)});
  out.push_back({"gauss_w2_cm3", gauss(2.0, -3.0)});
  out.push_back({"gauss_w07_c3", gauss(0.7, 3.0)});
  out.push_back({"sech", sample(grid, [](double x) { return Complex(1.0 / std::cosh(x)); })});
  out.push_back({"sech2_w15", sample(grid, [](double x) {
                   const double c = 1.0 / std::cosh(x / 1.5);
                   return Complex(c * c);
                 })});
  out.push_back({"chirp", sample(grid, [](double x) {
                   return std::exp(Complex(-0.5 * x * x, 0.5 * x * x));
                 })});
  for (int j = 1; j <= 3; ++j)
    out.push_back({"band_j" + std::to_string(j), band_limited_entry(pot, grid, j, workers)});
  if (pot.has_integer_level() && pot.level() >= 1) {
    for (const auto& b : bound_states(pot, grid))
      out.push_back({"bound_" + std::to_string(b.index), b.samples});
  }
  return out;
}

std::vector<BatteryEntry> battery_core10(const Potential& pot, const Grid& grid,
                                         unsigned workers) {
  auto all = make_battery(pot, grid, workers);
  std::vector<BatteryEntry> out;
  for (auto& e : all) {
    if (e.id.rfind("bound_", 0) == 0 || e.id == "band_j1") continue;
    out.push_back(std::move(e));
    if (out.size() == 10) break;
  }
  return out;
}

RatioStats equivalence_experiment(const DyadicSystem& system_a, const DyadicSystem& system_b,
                                  const NormSpec& spec, const std::vector<BatteryEntry>& battery,
                                  const Potential& pot, double bound, unsigned workers) {
  spec.validate();
  RatioStats stats;
  if (battery.empty()) throw InvalidParameter("equivalence_experiment: empty battery");
  stats.min_ratio = kInfinity;
  stats.max_ratio = 0.0;
  std::vector<double> na(battery.size()), nb(battery.size());
  parallel_for(battery.size(), workers, [&](size_t i) {
    na[i] = space_norm(battery[i].f, spec, system_a, pot, 1);
    nb[i] = space_norm(battery[i].f, spec, system_b, pot, 1);
  });
  for (size_t i = 0; i < battery.size(); ++i) {
    if (na[i] == 0.0 || nb[i] == 0.0) {
      if (l2_norm(battery[i].f) > 0.0) stats.anomaly = true;
      continue;
    }
    const double r = na[i] / nb[i];
    stats.ids.push_back(battery[i].id);
    stats.ratios.push_back(r);
    stats.min_ratio = std::min(stats.min_ratio, r);
    stats.max_ratio = std::max(stats.max_ratio, r);
  }
  stats.pass = !stats.anomaly && std::isfinite(stats.max_ratio) &&
               stats.max_ratio <= bound && stats.min_ratio >= 1.0 / bound;
  return stats;
}

RatioStats identification_experiment(const NormSpec& spec,
                                     const std::vector<BatteryEntry>& battery,
                                     const Potential& pot, IdentificationTarget target,
                                     const DyadicSystem& system, unsigned workers) {
  spec.validate();
  RatioStats stats;
  stats.min_ratio = kInfinity;
  stats.max_ratio = 0.0;
  const Potential free = Potential::integer_level(0);
  std::vector<double> num(battery.size()), den(battery.size());
  parallel_for(battery.size(), workers, [&](size_t i) {
    num[i] = space_norm(battery[i].f, spec, system, pot, 1);
    den[i] = target == IdentificationTarget::lp
                 ? lp_norm(battery[i].f, spec.p)
                 : space_norm(battery[i].f, spec, system, free, 1);
  });
  for (size_t i = 0; i < battery.size(); ++i) {
    if (den[i] == 0.0 || num[i] == 0.0) {
      if (l2_norm(battery[i].f) > 0.0) stats.anomaly = true;
      continue;
    }
    const double r = num[i] / den[i];
    stats.ids.push_back(battery[i].id);
    stats.ratios.push_back(r);
    stats.min_ratio = std::min(stats.min_ratio, r);
    stats.max_ratio = std::max(stats.max_ratio, r);
  }
  stats.pass = !stats.anomaly && std::isfinite(stats.max_ratio) && stats.max_ratio > 0.0;
  return stats;
}

}  // namespace ptspec
