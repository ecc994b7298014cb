#pragma once

#include <vector>

#include "ptspec/grid.hpp"
#include "ptspec/potential.hpp"

namespace ptspec {

/// The bivariate polynomial p_n(t, kappa) carrying the distorted plane
/// waves: e(x,k) is a prefactor times p_n(tanh x, ik) e^{ikx}. Built by the
/// coefficient recursion p_n = (1-t^2) d/dt p_{n-1} + (kappa - n t) p_{n-1},
/// p_0 = 1. Coefficients are exact integers.
class ScatteringPolynomial {
 public:
  explicit ScatteringPolynomial(int degree);

  int degree() const { return degree_; }
  double coefficient(int t_power, int kappa_power) const;

  Complex operator()(double t, Complex kappa) const;
  /// Partial derivative in t.
  Complex t_derivative(double t, Complex kappa) const;

  /// gamma_a(kappa) = sum_b c[a][b] kappa^b, so that p(t,kappa) = sum_a gamma_a t^a.
  std::vector<Complex> t_coefficients(Complex kappa) const;

 private:
  int degree_;
  std::vector<double> coeffs_;  // (n+1) x (n+1), row-major in (t_power, kappa_power)
};

enum class Side { plus, minus };

/// Distorted plane wave e(x, k) of the integer-level operator; k != 0.
/// Scale a and shift h act by e(x,k) = e_1(a(x-h), k/a).
Complex eigenfunction(const Potential& pot, double x, double k);

/// d/dx of the distorted plane wave (exact, via the polynomial form).
Complex eigenfunction_x_derivative(const Potential& pot, double x, double k);

/// e(x,k) * conj(e(y,k)) through the analytic product form, which is smooth
/// across k = 0 (unlike the two factors separately).
Complex wave_product(const Potential& pot, double x, double y, double k);

/// Transmission coefficient of the level-n operator. Unit modulus; the
/// companion reflection coefficient vanishes identically.
Complex transmission(int n, double k, Side side = Side::plus);

inline Complex reflection(int /*n*/, double k, Side /*side*/ = Side::plus) {
  if (k == 0.0) throw DomainError("reflection: k = 0 is the resonance point");
  return Complex(0.0);
}

/// {-j^2 : 1 <= j <= n}, ordered -1, -4, ..., -n^2 (empty for n = 0).
std::vector<double> point_spectrum(int n);

/// {-(lambda-1-j)^2 : j in N0, j < lambda-1}, strictly negative values only,
/// ordered by increasing j (decreasing magnitude).
std::vector<double> continuous_point_spectrum(double lambda);

struct BoundState {
  int index;          // j in 1..n, eigenvalue = -(scale*j)^2
  double eigenvalue;
  FunctionSample samples;  // L2-normalized on the grid
};

/// All bound states of an integer-level potential, L2-normalized, generated
/// from the ladder sech^m -> (d/dx - j tanh x) chains in closed form and
/// sampled on the grid. The grid must reach sech(a(x-h)) < 1e-10 on both ends.
std::vector<BoundState> bound_states(const Potential& pot, const Grid& grid);

/// Unnormalized closed form sech^j(z) Q(tanh z) of one bound state, with its
/// exact second derivative (for residual checks without finite differencing).
struct BoundStateForm {
  int index;
  double eigenvalue;
  double scale;
  double shift;
  std::vector<double> q;   // Q
  std::vector<double> q1;  // ladder step of Q
  std::vector<double> q2;  // two ladder steps (second derivative polynomial)

  double value(double x) const;
  double second_derivative(double x) const;
};

BoundStateForm bound_state_form(const Potential& pot, int index);

struct ContinuousScattering {
  double phi_even;   // asymptotic phase of the even standing solution
  double phi_odd;    // asymptotic phase of the odd standing solution
  Complex transmission;
  Complex reflection;
};

/// Scattering data of the continuous-lambda operator from the Gamma-function
/// phase formulas. |T|^2 + |R|^2 = 1 holds identically.
ContinuousScattering continuous_scattering(double lambda, double scale, double k);

struct PhaseFit {
  double phi_even;
  double phi_odd;
  double residual;  // relative rms misfit of the asymptotic cosine model
};

/// Extract the standing-wave phases of -u'' + V u = k^2 u by integrating from
/// x = 0 with even/odd data and least-squares fitting C cos(kx + phi) over the
/// outer 10% of the grid. Phases are reduced mod pi to [0, pi).
PhaseFit fit_standing_phases(const std::function<double(double)>& potential, double k,
                             const Grid& grid, double residual_tol = 1e-6);

/// Independent ODE route to ContinuousScattering; agrees with the
/// Gamma-function phases to ~1e-6 at desk-scale grids.
ContinuousScattering ode_phase_extraction(double lambda, double scale, double k,
                                          const Grid& grid);

/// Quadrature of sech(kz)(i eta - k tanh(kz)) e^{i eta z} over the grid;
/// vanishes identically (orthogonality of the bound and propagating states).
Complex orthogonality_integral(double k, double eta, const Grid& grid);

}  // namespace ptspec
