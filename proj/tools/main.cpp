// ptspec: command-line driver for the sech^2 spectral calculus toolkit.

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "ptspec/ptspec.hpp"

namespace fs = std::filesystem;
using namespace ptspec;

namespace {

struct RunConfig {
  // potential
  int level = 1;
  double lambda = 0.0;  // > 1 selects the continuous family
  double scale = 1.0;
  double shift = 0.0;
  // grid
  double xmin = -40.0;
  double xmax = 40.0;
  int points = 4001;
  // analysis
  std::string variant = "sqrt-partition";
  int jmax = 6;
  int band = 2;
  std::string family = "B";
  double alpha = 0.5;
  double p = 2.0;
  double q = 2.0;
  bool peetre = false;
  // scattering sweep
  double kmin = 0.25;
  double kmax = 4.0;
  int ksteps = 16;
  // evolution
  std::string times = "0,1,2,5,10,20";
  // run control
  std::string out = "ptspec_out";
  unsigned workers = 0;
  bool quick = false;

  Potential potential() const {
    return lambda > 1.0 ? Potential::continuous(lambda, scale, shift)
                        : Potential::integer_level(level, scale, shift);
  }
  Grid grid() const { return Grid(xmin, xmax, points); }
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::ofstream open_out(const fs::path& dir, const std::string& name) {
  fs::create_directories(dir);
  std::ofstream out(dir / name);
  if (!out) throw std::runtime_error("cannot open " + (dir / name).string());
  return out;
}

std::vector<double> parse_times(const std::string& spec) {
  std::vector<double> out;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
  if (out.empty()) throw InvalidParameter("times: empty list");
  return out;
}

NormSpec norm_spec(const RunConfig& cfg) {
  NormSpec spec;
  spec.family = cfg.family == "F" ? Family::triebel_lizorkin : Family::besov;
  spec.alpha = cfg.alpha;
  spec.p = cfg.p;
  spec.q = cfg.q;
  spec.max_band = cfg.jmax;
  spec.variant = cfg.peetre ? NormVariant::peetre : NormVariant::plain;
  return spec;
}

int run_scatter(const RunConfig& cfg) {
  auto out = open_out(cfg.out, "scatter.csv");
  const bool continuous = cfg.lambda > 1.0;
  if (continuous)
    out << "k,phi_even,phi_odd,re_T,im_T,abs_T,abs_R\n";
  else
    out << "k,re_T,im_T,abs_T,abs_R\n";
  for (int i = 0; i < cfg.ksteps; ++i) {
    const double k = cfg.kmin + (cfg.kmax - cfg.kmin) * i / std::max(1, cfg.ksteps - 1);
    if (k == 0.0) continue;
    if (continuous) {
      const auto s = continuous_scattering(cfg.lambda, cfg.scale, k);
      out << fmt(k) << ',' << fmt(s.phi_even) << ',' << fmt(s.phi_odd) << ','
          << fmt(s.transmission.real()) << ',' << fmt(s.transmission.imag()) << ','
          << fmt(std::abs(s.transmission)) << ',' << fmt(std::abs(s.reflection)) << '\n';
    } else {
      const Complex t = transmission(cfg.level, k);
      out << fmt(k) << ',' << fmt(t.real()) << ',' << fmt(t.imag()) << ','
          << fmt(std::abs(t)) << ',' << fmt(0.0) << '\n';
    }
  }
  std::printf("scatter: wrote %s\n", (fs::path(cfg.out) / "scatter.csv").c_str());
  return 0;
}

int run_bound(const RunConfig& cfg) {
  const Potential pot = cfg.potential();
  const Grid grid = cfg.grid();
  const auto states = bound_states(pot, grid);
  auto out = open_out(cfg.out, "bound.csv");
  out << "x";
  for (const auto& s : states) out << ",state_" << s.index;
  out << '\n';
  for (int i = 0; i < grid.n_points(); ++i) {
    out << fmt(grid.x(i));
    for (const auto& s : states) out << ',' << fmt(s.samples.values[i].real());
    out << '\n';
  }
  // residuals against the exact second derivative of the closed form
  auto rep = open_out(cfg.out, "bound_report.json");
  rep << "[\n";
  for (size_t s = 0; s < states.size(); ++s) {
    const auto form = bound_state_form(pot, states[s].index);
    double num = 0.0, den = 0.0;
    const auto w = grid.trapezoid_weights();
    for (int i = 0; i < grid.n_points(); ++i) {
      const double x = grid.x(i);
      const double u = form.value(x);
      const double r = -form.second_derivative(x) + pot(x) * u - form.eigenvalue * u;
      num += w[i] * r * r;
      den += w[i] * u * u;
    }
    rep << "  {\"index\": " << states[s].index << ", \"eigenvalue\": "
        << fmt(states[s].eigenvalue) << ", \"l2_norm\": "
        << fmt(lp_norm(states[s].samples, 2.0)) << ", \"relative_residual\": "
        << fmt(std::sqrt(num / den)) << '}' << (s + 1 < states.size() ? "," : "") << '\n';
  }
  rep << "]\n";
  std::printf("bound: %zu states written under %s\n", states.size(), cfg.out.c_str());
  return 0;
}

int run_kernel(const RunConfig& cfg) {
  const Potential pot = cfg.potential();
  const Grid grid = cfg.grid();
  const DyadicSystem system = DyadicSystem::build(cfg.variant);
  const fs::path cache_dir = fs::path(cfg.out) / "cache";
  fs::create_directories(cache_dir);
  std::ostringstream key;
  key << "kernel_l" << cfg.level << "_a" << cfg.scale << "_h" << cfg.shift << '_'
      << cfg.variant << "_j" << cfg.band << '_' << cfg.xmin << '_' << cfg.xmax << '_'
      << cfg.points << ".bin";
  const fs::path cached = cache_dir / key.str();
  MultiplierKernel kernel{0, grid, {}, std::nullopt};
  if (fs::exists(cached)) {
    kernel = read_kernel_binary(cached);
    std::printf("kernel: cache hit (%s)\n", cached.c_str());
  } else {
    kernel = build_band_kernel(system, cfg.band, pot, grid, true, cfg.workers);
    write_kernel_binary(cached, kernel);
  }
  write_kernel_csv(fs::path(cfg.out) / "kernel.csv", kernel);
  auto rep = open_out(cfg.out, "kernel_decay.json");
  rep << "[\n";
  for (int npow : {2, 3}) {
    const auto prof = decay_profile(kernel, npow);
    rep << "  {\"band\": " << cfg.band << ", \"n_power\": " << npow
        << ", \"c_measured\": " << fmt(prof.c_measured)
        << ", \"d_measured\": " << fmt(prof.d_measured) << '}' << (npow == 2 ? "," : "")
        << '\n';
  }
  rep << "]\n";
  std::printf("kernel: band %d on [%g, %g] x %d\n", cfg.band, cfg.xmin, cfg.xmax, cfg.points);
  return 0;
}

int run_bank(const RunConfig& cfg) {
  const Potential pot = cfg.potential();
  const Grid grid = cfg.grid();
  const DyadicSystem system = DyadicSystem::build(cfg.variant);
  BandOperator bank(pot, grid, system, 0, cfg.jmax, cfg.workers);
  const auto battery = make_battery(pot, grid, cfg.workers);
  auto out = open_out(cfg.out, "bank.csv");
  out << "function,roundtrip_rel_l2,band_energy_over_l2\n";
  bool ok = true;
  for (const auto& e : battery) {
    const auto bands = bank.analysis(e.f);
    const auto back = bank.synthesis(bands);
    const double err = relative_l2_error(back, e.f);
    double energy = 0.0;
    for (const auto& b : bands.bands) {
      const double n = l2_norm(b);
      energy += n * n;
    }
    const double l2 = l2_norm(e.f);
    out << e.id << ',' << fmt(err) << ',' << fmt(energy / (l2 * l2)) << '\n';
    ok = ok && err <= 1e-4;
  }
  std::printf("bank: reconstruction %s\n", ok ? "PASS" : "FAIL");
  return ok ? 0 : 1;
}

int run_norm(const RunConfig& cfg) {
  const Potential pot = cfg.potential();
  const Grid grid = cfg.grid();
  const DyadicSystem system = DyadicSystem::build(cfg.variant);
  const DyadicSystem other =
      DyadicSystem::build(cfg.variant == "sqrt-partition" ? "shifted-sqrt" : "sqrt-partition");
  const NormSpec spec = norm_spec(cfg);
  const auto battery = make_battery(pot, grid, cfg.workers);
  const auto stats =
      equivalence_experiment(system, other, spec, battery, pot, 50.0, cfg.workers);
  auto out = open_out(cfg.out, "norm.csv");
  out << "function,norm,ratio_vs_other_system\n";
  std::vector<double> norms(battery.size());
  parallel_for(battery.size(), cfg.workers, [&](size_t i) {
    norms[i] = space_norm(battery[i].f, spec, system, pot, 1);
  });
  for (size_t i = 0; i < battery.size(); ++i)
    out << battery[i].id << ',' << fmt(norms[i])
        << ',' << (i < stats.ratios.size() ? fmt(stats.ratios[i]) : "") << '\n';
  auto rep = open_out(cfg.out, "norm_report.json");
  rep << "{\"family\": \"" << cfg.family << "\", \"alpha\": " << fmt(cfg.alpha)
      << ", \"p\": " << fmt(cfg.p) << ", \"q\": " << fmt(cfg.q)
      << ", \"min_ratio\": " << fmt(stats.min_ratio)
      << ", \"max_ratio\": " << fmt(stats.max_ratio)
      << ", \"pass\": " << (stats.pass ? "true" : "false") << "}\n";
  std::printf("norm: ratios in [%.4g, %.4g] %s\n", stats.min_ratio, stats.max_ratio,
              stats.pass ? "PASS" : "FAIL");
  return stats.pass ? 0 : 1;
}

int run_evolve(const RunConfig& cfg) {
  const Potential pot = cfg.potential();
  const Grid grid = cfg.grid();
  const DyadicSystem system = DyadicSystem::build(cfg.variant);
  NormSpec out_spec = norm_spec(cfg);
  out_spec.family = Family::besov;
  NormSpec in_spec = out_spec;
  const double beta = std::abs(0.5 - 1.0 / cfg.p);
  in_spec.alpha = out_spec.alpha + 2.0 * beta;
  const auto f = sample(grid, [](double x) { return Complex(std::exp(-x * x / 18.0)); });
  const auto curve = decay_experiment(f, pot, out_spec, in_spec, parse_times(cfg.times),
                                      system, 4.0, cfg.workers);
  auto out = open_out(cfg.out, "evolve.csv");
  out << "t,norm_out,bound,ratio\n";
  for (size_t i = 0; i < curve.times.size(); ++i)
    out << fmt(curve.times[i]) << ',' << fmt(curve.norm_out[i]) << ','
        << fmt(curve.bound[i]) << ',' << fmt(curve.ratio[i]) << '\n';
  std::printf("evolve: beta = %g, %s\n", curve.beta, curve.pass ? "PASS" : "FAIL");
  return curve.pass ? 0 : 1;
}

int run_verify(const RunConfig& cfg) {
  VerifyOptions options;
  options.workers = cfg.workers;
  options.quick = cfg.quick;
  const auto results = run_acceptance(options);
  fs::create_directories(cfg.out);
  write_report_json(fs::path(cfg.out) / "verify.json", results);
  int failures = 0;
  for (const auto& r : results) {
    std::printf("[%s] %-26s value=%-12.5g threshold=%-10.5g\n", r.pass ? "PASS" : "FAIL",
                r.id.c_str(), r.value, r.threshold);
    if (!r.pass) ++failures;
  }
  std::printf("verify: %zu/%zu criteria passed; report at %s\n", results.size() - failures,
              results.size(), (fs::path(cfg.out) / "verify.json").c_str());
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral calculus of the sech^2 Schrodinger operator"};
  app.require_subcommand(1);
  RunConfig cfg;

  app.set_config("--config", "", "flat key=value configuration file");
  app.allow_config_extras(false);

  app.add_option("--level", cfg.level, "integer potential level n (lambda = n+1)");
  app.add_option("--lambda", cfg.lambda, "continuous lambda > 1 (overrides --level)");
  app.add_option("--scale", cfg.scale, "potential scale a");
  app.add_option("--shift", cfg.shift, "potential shift h");
  app.add_option("--xmin", cfg.xmin, "grid left end");
  app.add_option("--xmax", cfg.xmax, "grid right end");
  app.add_option("--points", cfg.points, "grid point count");
  app.add_option("--variant", cfg.variant, "dyadic window variant");
  app.add_option("--jmax", cfg.jmax, "largest dyadic band");
  app.add_option("--band", cfg.band, "band for the kernel subcommand");
  app.add_option("--family", cfg.family, "norm family, F or B");
  app.add_option("--alpha", cfg.alpha, "smoothness index");
  app.add_option("--p", cfg.p, "outer integrability exponent");
  app.add_option("--q", cfg.q, "band summation exponent");
  app.add_flag("--peetre", cfg.peetre, "use the maximal-function norm variant");
  app.add_option("--kmin", cfg.kmin, "scatter: lowest k");
  app.add_option("--kmax", cfg.kmax, "scatter: highest k");
  app.add_option("--ksteps", cfg.ksteps, "scatter: sweep size");
  app.add_option("--times", cfg.times, "evolve: comma-separated times");
  app.add_option("--out", cfg.out, "output directory")->envname("PTSPEC_OUT");
  app.add_option("--workers", cfg.workers, "worker threads (0 = all cores)");
  app.add_flag("--quick", cfg.quick, "verify: trimmed sweeps");

  auto* scatter = app.add_subcommand("scatter", "transmission/reflection tables and phases");
  auto* bound = app.add_subcommand("bound", "bound states and residuals");
  auto* kernel = app.add_subcommand("kernel", "dyadic band kernel and decay profile");
  auto* bank = app.add_subcommand("bank", "analysis/synthesis round trip");
  auto* norm = app.add_subcommand("norm", "quasi-norms over the battery");
  auto* evolve = app.add_subcommand("evolve", "dispersive decay curves");
  auto* verify = app.add_subcommand("verify", "full acceptance suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (scatter->parsed()) return run_scatter(cfg);
    if (bound->parsed()) return run_bound(cfg);
    if (kernel->parsed()) return run_kernel(cfg);
    if (bank->parsed()) return run_bank(cfg);
    if (norm->parsed()) return run_norm(cfg);
    if (evolve->parsed()) return run_evolve(cfg);
    if (verify->parsed()) return run_verify(cfg);
  } catch (const ResolutionError& e) {
    std::fprintf(stderr, "resolution error: %s\n", e.what());
    return 3;
  } catch (const PreconditionError& e) {
    std::fprintf(stderr, "precondition error: %s\n", e.what());
    return 3;
  } catch (const InvalidParameter& e) {
    std::fprintf(stderr, "invalid parameter: %s\n", e.what());
    return 3;
  } catch (const DomainError& e) {
    std::fprintf(stderr, "domain error: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
