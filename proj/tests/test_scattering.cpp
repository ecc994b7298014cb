#include <doctest.h>

#include <cmath>

#include "ptspec/norms.hpp"
#include "ptspec/scattering.hpp"
#include "ptspec/verification.hpp"
#include "support/frozen.hpp"

using namespace ptspec;

namespace {
constexpr double kPi = 3.14159265358979323846;

double gap_mod_pi(double a, double b) {
  double d = std::fmod(std::abs(a - b), kPi);
  return std::min(d, kPi - d);
}
}  // namespace

TEST_CASE("scattering polynomial: small degrees are exact") {
  SUBCASE("p_0 = 1") {
    const ScatteringPolynomial p(0);
    CHECK(p.coefficient(0, 0) == 1.0);
    CHECK(p(0.3, Complex(0, 2)) == Complex(1.0));
  }
  SUBCASE("p_1 = kappa - t") {
    const ScatteringPolynomial p(1);
    CHECK(p.coefficient(0, 1) == 1.0);
    CHECK(p.coefficient(1, 0) == -1.0);
    CHECK(p.coefficient(0, 0) == 0.0);
    CHECK(p.coefficient(1, 1) == 0.0);
  }
  SUBCASE("p_2 = kappa^2 - 3 kappa t + 3 t^2 - 1") {
    const ScatteringPolynomial p(2);
    CHECK(p.coefficient(0, 2) == 1.0);
    CHECK(p.coefficient(1, 1) == -3.0);
    CHECK(p.coefficient(2, 0) == 3.0);
    CHECK(p.coefficient(0, 0) == -1.0);
    CHECK(p.coefficient(2, 2) == 0.0);
  }
}

TEST_CASE("scattering polynomial: boundary products hold exactly") {
  // p_n(1, kappa) = prod (kappa - j), p_n(-1, kappa) = prod (kappa + j),
  // exact over integer/half-integer kappa where the arithmetic is exact
  for (int n = 0; n <= 6; ++n) {
    const ScatteringPolynomial p(n);
    for (const Complex kappa : {Complex(2.0, 0.0), Complex(0.5, 0.0), Complex(0.0, 1.0),
                                Complex(-1.5, 0.5)}) {
      Complex plus = 1.0, minus = 1.0;
      for (int j = 1; j <= n; ++j) {
        plus *= kappa - static_cast<double>(j);
        minus *= kappa + static_cast<double>(j);
      }
      CHECK(std::abs(p(1.0, kappa) - plus) <= 1e-12 * std::max(1.0, std::abs(plus)));
      CHECK(std::abs(p(-1.0, kappa) - minus) <= 1e-12 * std::max(1.0, std::abs(minus)));
    }
  }
}

TEST_CASE("eigenfunction closed forms") {
  SUBCASE("n = 0 is the plane wave") {
    const Potential pot = Potential::integer_level(0);
    for (double k : {0.7, -1.3})
      for (double x : {-2.0, 0.5})
        CHECK(std::abs(eigenfunction(pot, x, k) - std::exp(Complex(0.0, k * x))) <= 1e-14);
  }
  SUBCASE("n = 1 at x = 0, k = 1 equals (1+i)/2") {
    const Potential pot = Potential::integer_level(1);
    CHECK(std::abs(eigenfunction(pot, 0.0, 1.0) - Complex(0.5, 0.5)) <= 1e-14);
  }
  SUBCASE("n = 2 formula") {
    const Potential pot = Potential::integer_level(2);
    for (double x : {-1.0, 0.3, 2.0}) {
      const double t = std::tanh(x);
      const Complex want = (Complex(3.0 * t * t - 2.0, -3.0 * t) / Complex(1.0, 3.0)) *
                           std::exp(Complex(0.0, x));
      CHECK(std::abs(eigenfunction(pot, x, 1.0) - want) <= 1e-14);
    }
  }
  SUBCASE("k = 0 is rejected") {
    CHECK_THROWS_AS(eigenfunction(Potential::integer_level(1), 0.0, 0.0), DomainError);
  }
}

TEST_CASE("eigenfunction symmetry e(x,-k) = e(-x,k)") {
  for (int n : {1, 2, 3}) {
    const Potential pot = Potential::integer_level(n);
    for (double k : {0.25, 1.0, 2.5})
      for (double x : {-3.0, -0.4, 0.0, 1.7})
        CHECK(std::abs(eigenfunction(pot, x, -k) - eigenfunction(pot, -x, k)) <= 1e-13);
  }
}

TEST_CASE("eigenfunction satisfies the equation (fine-grid finite differences)") {
  // fourth-order stencil on a fine grid; relative residual <= 1e-6
  const Grid g(-10.0, 10.0, 10001);
  const double h = g.spacing();
  for (int n : {1, 2}) {
    const Potential pot = Potential::integer_level(n);
    for (double k : {0.5, 2.0}) {
      double worst = 0.0, scale = 0.0;
      for (int i = 2; i + 2 < g.n_points(); ++i) {
        const Complex em2 = eigenfunction(pot, g.x(i - 2), k);
        const Complex em1 = eigenfunction(pot, g.x(i - 1), k);
        const Complex e0 = eigenfunction(pot, g.x(i), k);
        const Complex ep1 = eigenfunction(pot, g.x(i + 1), k);
        const Complex ep2 = eigenfunction(pot, g.x(i + 2), k);
        const Complex d2 = (-em2 + 16.0 * em1 - 30.0 * e0 + 16.0 * ep1 - ep2) / (12.0 * h * h);
        worst = std::max(worst, std::abs(-d2 + pot(g.x(i)) * e0 - k * k * e0));
        scale = std::max(scale, std::abs(k * k * e0));
      }
      CHECK(worst / scale <= 1e-6);
    }
  }
}

TEST_CASE("eigenfunction asymptotics carry the transmission coefficient") {
  const double x = 40.0;
  for (int n : {1, 2})
    for (double k : {0.5, 1.0, 2.0}) {
      const Potential pot = Potential::integer_level(n);
      const Complex want = transmission(n, k) * std::exp(Complex(0.0, k * x));
      CHECK(std::abs(eigenfunction(pot, x, k) - want) <= 1e-6);
    }
}

TEST_CASE("wave product is continuous across k = 0") {
  for (int n : {1, 2}) {
    const Potential pot = Potential::integer_level(n);
    for (double x : {-1.0, 0.7})
      for (double y : {-2.0, 0.2}) {
        const Complex above = wave_product(pot, x, y, 1e-6);
        const Complex below = wave_product(pot, x, y, -1e-6);
        CHECK(std::abs(above - below) <= 1e-4);
        // and the product agrees with the two-factor route away from zero
        const Complex direct = eigenfunction(pot, x, 1.0) *
                               std::conj(eigenfunction(pot, y, 1.0));
        CHECK(std::abs(wave_product(pot, x, y, 1.0) - direct) <= 1e-13);
      }
  }
}

TEST_CASE("transmission coefficients") {
  CHECK(transmission(0, 1.0) == Complex(1.0));
  CHECK(std::abs(transmission(1, 1.0, Side::plus) - Complex(0.0, 1.0)) <= 1e-15);
  for (int n : {1, 2, 3})
    for (double k : {0.25, 0.5, 1.0, 2.0, 4.0})
      for (Side s : {Side::plus, Side::minus}) {
        const Complex t = transmission(n, k, s);
        CHECK(std::abs(std::abs(t) - 1.0) <= 1e-12);
        CHECK(std::abs(std::norm(t) + std::norm(reflection(n, k, s)) - 1.0) <= 1e-12);
      }
  CHECK_THROWS_AS(transmission(2, 0.0), DomainError);
}

TEST_CASE("point spectra") {
  CHECK(point_spectrum(0).empty());
  CHECK(point_spectrum(1) == std::vector<double>{-1.0});
  CHECK(point_spectrum(2) == std::vector<double>{-1.0, -4.0});
  const auto c = continuous_point_spectrum(2.5);
  REQUIRE(c.size() == 2);
  CHECK(c[0] == doctest::Approx(-2.25));
  CHECK(c[1] == doctest::Approx(-0.25));
  const auto one = continuous_point_spectrum(1.2);
  REQUIRE(one.size() == 1);
  CHECK(one[0] == doctest::Approx(-0.04));
  CHECK(continuous_point_spectrum(2.0) == std::vector<double>{-1.0});
}

TEST_CASE("bound states") {
  const Grid g(-40.0, 40.0, 2001);
  SUBCASE("n = 1 is the normalized sech") {
    const auto states = bound_states(Potential::integer_level(1), g);
    REQUIRE(states.size() == 1);
    CHECK(states[0].eigenvalue == doctest::Approx(-1.0));
    CHECK(lp_norm(states[0].samples, 2.0) == doctest::Approx(1.0).epsilon(1e-10));
    const double c = std::sqrt(2.0);  // ||sech||_2^2 = 2
    for (int i = 0; i < g.n_points(); i += 100)
      CHECK(states[0].samples.values[i].real() ==
            doctest::Approx(1.0 / std::cosh(g.x(i)) / c).epsilon(1e-10));
  }
  SUBCASE("n = 2 states and their orthogonality") {
    const auto states = bound_states(Potential::integer_level(2), g);
    REQUIRE(states.size() == 2);
    CHECK(states[0].eigenvalue == doctest::Approx(-1.0));
    CHECK(states[1].eigenvalue == doctest::Approx(-4.0));
    // shapes: sech tanh at -1, sech^2 at -4
    const double x0 = 1.3;
    const int i0 = static_cast<int>((x0 - g.x_min()) / g.spacing());
    const double ratio1 = states[0].samples.values[i0].real() /
                          (std::tanh(g.x(i0)) / std::cosh(g.x(i0)));
    const double ratio2 = states[1].samples.values[i0].real() /
                          (1.0 / std::cosh(g.x(i0)) / std::cosh(g.x(i0)));
    const int i1 = i0 + 400;
    CHECK(states[0].samples.values[i1].real() ==
          doctest::Approx(ratio1 * std::tanh(g.x(i1)) / std::cosh(g.x(i1))).epsilon(1e-9));
    CHECK(states[1].samples.values[i1].real() ==
          doctest::Approx(ratio2 / std::cosh(g.x(i1)) / std::cosh(g.x(i1))).epsilon(1e-9));
    CHECK(std::abs(inner_product(states[0].samples, states[1].samples)) <= 1e-10);
  }
  SUBCASE("closed-form eigen residual vanishes") {
    for (int n : {1, 2, 3}) {
      const Potential pot = Potential::integer_level(n);
      for (int j = 1; j <= n; ++j) {
        const auto form = bound_state_form(pot, j);
        for (double x : {-3.0, -0.5, 0.0, 1.1, 4.2}) {
          const double residual =
              -form.second_derivative(x) + pot(x) * form.value(x) - form.eigenvalue * form.value(x);
          CHECK(std::abs(residual) <= 1e-12 * std::max(1.0, std::abs(form.value(x))));
        }
      }
    }
  }
  SUBCASE("narrow grid is rejected") {
    CHECK_THROWS_AS(bound_states(Potential::integer_level(1), Grid(-5.0, 5.0, 101)),
                    PreconditionError);
  }
}

TEST_CASE("bound states agree with the shooting oracle") {
  for (int n : {1, 2, 3}) {
    const auto found = shooting_point_spectrum(Potential::integer_level(n), n + 0.6);
    const auto want = point_spectrum(n);
    REQUIRE(found.size() == want.size());
    for (size_t i = 0; i < found.size(); ++i)
      CHECK(found[i] == doctest::Approx(want[i]).epsilon(1e-7));
  }
}

TEST_CASE("continuous scattering via Gamma phases") {
  SUBCASE("conservation law is identical") {
    for (double lam : {1.5, 2.5, 3.3})
      for (double k : {0.5, 1.0, 2.0}) {
        const auto s = continuous_scattering(lam, 1.0, k);
        CHECK(std::abs(std::norm(s.transmission) + std::norm(s.reflection) - 1.0) <= 1e-14);
      }
  }
  SUBCASE("integer limit is reflectionless and matches the product formula") {
    const auto s = continuous_scattering(2.0, 1.0, 1.0);
    CHECK(std::abs(s.reflection) <= 1e-12);
    CHECK(std::abs(s.transmission - transmission(1, 1.0)) <= 1e-12);
  }
  SUBCASE("|T|^2 at lambda = 2.5, k = 1") {
    const auto s = continuous_scattering(2.5, 1.0, 1.0);
    CHECK(std::norm(s.transmission) == doctest::Approx(frozen::t2_lambda25_k1).epsilon(1e-12));
    CHECK(gap_mod_pi(s.phi_even, frozen::phi_even_lambda25_k1) <= 1e-12);
    CHECK(gap_mod_pi(s.phi_odd, frozen::phi_odd_lambda25_k1) <= 1e-12);
  }
  SUBCASE("phase gap follows the sinh/sin law") {
    for (double lam : {1.3, 2.5, 3.7})
      for (double k : {0.5, 1.0, 2.0}) {
        const auto s = continuous_scattering(lam, 1.0, k);
        const double want = std::atan2(std::sinh(kPi * k), std::sin(kPi * lam));
        CHECK(gap_mod_pi(s.phi_even - s.phi_odd, want) <= 1e-8);
      }
  }
  SUBCASE("domain errors") {
    CHECK_THROWS_AS(continuous_scattering(0.9, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(continuous_scattering(2.5, 1.0, 0.0), DomainError);
  }
}

TEST_CASE("ODE phase extraction") {
  const Grid g(-40.0, 40.0, 2001);
  SUBCASE("reflectionless integer case has gap pi/2") {
    const auto s = ode_phase_extraction(2.0, 1.0, 1.0, g);
    CHECK(gap_mod_pi(s.phi_even - s.phi_odd, kPi / 2.0) <= 1e-4);
    CHECK(std::abs(std::abs(s.transmission) - 1.0) <= 1e-4);
  }
  SUBCASE("matches the Gamma route") {
    for (double lam : {3.0, 1.5})
      for (double k : {0.5, 1.0}) {
        const auto ode = ode_phase_extraction(lam, 1.0, k, g);
        const auto gam = continuous_scattering(lam, 1.0, k);
        CHECK(gap_mod_pi(ode.phi_even, gam.phi_even) <= 1e-4);
        CHECK(gap_mod_pi(ode.phi_odd, gam.phi_odd) <= 1e-4);
      }
  }
  SUBCASE("free potential has vanishing phases") {
    const auto fit = fit_standing_phases([](double) { return 0.0; }, 1.0, g);
    CHECK(gap_mod_pi(fit.phi_even, 0.0) <= 1e-6);
    CHECK(gap_mod_pi(fit.phi_odd, 0.0) <= 1e-6);
  }
}

TEST_CASE("orthogonality integral vanishes") {
  const Grid g(-40.0, 40.0, 4001);
  CHECK(std::abs(orthogonality_integral(1.0, 1.0, g)) <= 1e-8);
  CHECK(std::abs(orthogonality_integral(1.0, 0.0, g)) <= 1e-8);
  CHECK(std::abs(orthogonality_integral(2.0, 0.7, g)) <= 1e-8);
}

TEST_CASE("scale and shift covariance of the eigenfunctions") {
  // e_pot solves -u'' + V u = k^2 u for the scaled/shifted potential
  const Potential pot = Potential::integer_level(1, 2.0, 3.0);
  const Grid g(-6.0, 6.0, 6001);
  const double h = g.spacing();
  const double k = 1.0;
  double worst = 0.0, scale = 0.0;
  for (int i = 2; i + 2 < g.n_points(); ++i) {
    const Complex em2 = eigenfunction(pot, g.x(i - 2), k);
    const Complex em1 = eigenfunction(pot, g.x(i - 1), k);
    const Complex e0 = eigenfunction(pot, g.x(i), k);
    const Complex ep1 = eigenfunction(pot, g.x(i + 1), k);
    const Complex ep2 = eigenfunction(pot, g.x(i + 2), k);
    const Complex d2 = (-em2 + 16.0 * em1 - 30.0 * e0 + 16.0 * ep1 - ep2) / (12.0 * h * h);
    worst = std::max(worst, std::abs(-d2 + pot(g.x(i)) * e0 - k * k * e0));
    scale = std::max(scale, std::abs(e0));
  }
  CHECK(worst / scale <= 1e-5);
}
