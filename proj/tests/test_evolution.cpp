#include <doctest.h>

#include <cmath>

#include "ptspec/evolution.hpp"

using namespace ptspec;

namespace {
const Grid kGrid(-40.0, 40.0, 1601);
const DyadicSystem kSys = DyadicSystem::build("sqrt-partition");

FunctionSample wide_gaussian(const Grid& g) {
  return sample(g, [](double x) { return Complex(std::exp(-x * x / 18.0)); });
}
}  // namespace

TEST_CASE("propagation basics") {
  const Potential pot = Potential::integer_level(1);
  const Propagator prop(pot, kGrid, 4.0, 10.0);
  const auto f = wide_gaussian(kGrid);

  SUBCASE("t = 0 reproduces the state") {
    CHECK(relative_l2_error(prop(f, 0.0), f) <= 1e-4);
  }
  SUBCASE("unitarity") {
    const double base = l2_norm(f);
    for (double t : {0.5, 2.0, 10.0})
      CHECK(std::abs(l2_norm(prop(f, t)) - base) <= 1e-6 * base);
  }
  SUBCASE("group law") {
    const auto one = prop(prop(f, 3.0), 4.0);
    const auto direct = prop(f, 7.0);
    CHECK(relative_l2_error(one, direct) <= 2e-4);
  }
  SUBCASE("bound state only picks up a phase") {
    const auto e1 = bound_states(pot, kGrid)[0].samples;
    for (double t : {1.0, 6.5}) {
      const auto psi = prop(e1, t);
      // eigenvalue -1: psi = e^{it} e1 pointwise
      const Complex phase = std::polar(1.0, t);
      CHECK(relative_l2_error(psi, phase * e1) <= 1e-8);
      for (int i = 0; i < kGrid.n_points(); i += 200)
        CHECK(std::abs(std::abs(psi.values[i]) - std::abs(e1.values[i])) <= 1e-10);
    }
  }
  SUBCASE("phase resolution guard") {
    const auto kq = KQuadrature::full_range(4.0, kGrid.extent());
    CHECK_THROWS_AS(propagate(f, pot, 50.0, kq), ResolutionError);
  }
}

TEST_CASE("free evolution matches the closed-form gaussian") {
  const Potential free_pot = Potential::integer_level(0);
  const Propagator prop(free_pot, kGrid, 6.0, 5.0);
  const double a = 1.0;
  const auto f = sample(kGrid, [&](double x) { return Complex(std::exp(-a * x * x)); });
  for (double t : {0.5, 2.0}) {
    const auto psi = prop(f, t);
    const Complex b(1.0, 4.0 * a * t);
    double worst = 0.0;
    for (int i = 0; i < kGrid.n_points(); ++i) {
      const double x = kGrid.x(i);
      const Complex want = std::exp(-a * x * x / b) / std::sqrt(b);
      worst = std::max(worst, std::abs(psi.values[i] - want));
    }
    CHECK(worst <= 1e-5);
  }
}

TEST_CASE("bandwise energies are conserved and the propagator commutes") {
  const Potential pot = Potential::integer_level(1);
  const Propagator prop(pot, kGrid, 4.0, 10.0);
  const auto f = wide_gaussian(kGrid);
  BandOperator bank(pot, kGrid, kSys, 0, 4);
  const auto before = bank.analysis(f);
  const auto after = bank.analysis(prop(f, 4.0));
  for (int j = 0; j <= 4; ++j)
    CHECK(l2_norm(after.band(j)) ==
          doctest::Approx(l2_norm(before.band(j))).epsilon(1e-6));

  // commutation with a fixed multiplier
  const Symbol sym = [](double xi) { return 1.0 / (1.0 + xi * xi); };
  const auto kq = KQuadrature::full_range(4.0, kGrid.extent(), 4.0);
  const auto a = propagate(apply_multiplier(sym, f, pot, kq), pot, 2.0, kq);
  const auto b = apply_multiplier(sym, propagate(f, pot, 2.0, kq), pot, kq);
  CHECK(relative_l2_error(a, b) <= 1e-6);
}

TEST_CASE("decay experiment") {
  const Potential pot = Potential::integer_level(1);
  const auto f = wide_gaussian(kGrid);
  const std::vector<double> times{0.0, 1.0, 2.0, 5.0, 10.0, 20.0};

  SUBCASE("p = 2 has a flat ratio curve") {
    NormSpec out;
    out.family = Family::besov;
    out.alpha = 0.5;
    out.p = 2.0;
    out.q = 2.0;
    out.max_band = 4;
    const auto curve = decay_experiment(f, pot, out, out, times, kSys, 4.0);
    CHECK(curve.beta == doctest::Approx(0.0));
    CHECK(curve.pass);
    for (double r : curve.ratio)
      CHECK(std::abs(r - curve.ratio.front()) <= 1e-3 * curve.ratio.front());
  }
  SUBCASE("p = 1 ratio stays bounded by its early maximum") {
    NormSpec out;
    out.family = Family::besov;
    out.alpha = 0.5;
    out.p = 1.0;
    out.q = 1.5;
    out.max_band = 4;
    NormSpec in = out;
    in.alpha = 1.5;  // alpha + 2 beta, beta = 1/2
    const auto curve = decay_experiment(f, pot, out, in, times, kSys, 4.0);
    CHECK(curve.pass);
    double early = 0.0, overall = 0.0;
    for (size_t i = 0; i < curve.times.size(); ++i) {
      overall = std::max(overall, curve.ratio[i]);
      if (curve.times[i] <= 5.0) early = std::max(early, curve.ratio[i]);
    }
    CHECK(overall <= 1.5 * early);
  }
  SUBCASE("eigenstate keeps every norm") {
    const auto e1 = bound_states(pot, kGrid)[0].samples;
    NormSpec out;
    out.family = Family::besov;
    out.alpha = 0.5;
    out.p = 2.0;
    out.q = 2.0;
    out.max_band = 4;
    const auto curve = decay_experiment(e1, pot, out, out, times, kSys, 4.0);
    for (double n : curve.norm_out)
      CHECK(n == doctest::Approx(curve.norm_out.front()).epsilon(1e-8));
  }
  SUBCASE("mismatched smoothness offsets are rejected") {
    NormSpec out;
    out.family = Family::besov;
    out.alpha = 0.5;
    out.p = 1.0;
    out.q = 1.5;
    out.max_band = 4;
    NormSpec in = out;  // missing the 2 beta offset
    CHECK_THROWS_AS(decay_experiment(f, pot, out, in, times, kSys, 4.0), InvalidParameter);
  }
  SUBCASE("leaking wave packets are rejected") {
    const auto narrow = sample(kGrid, [](double x) { return Complex(std::exp(-x * x)); });
    NormSpec out;
    out.family = Family::besov;
    out.alpha = 0.5;
    out.p = 2.0;
    out.q = 2.0;
    out.max_band = 4;
    // bandwidth ~3 puts the wavefront at the boundary near t ~ 6
    CHECK_THROWS_AS(decay_experiment(narrow, pot, out, out, {0.0, 6.0}, kSys, 4.0),
                    PreconditionError);
  }
}
