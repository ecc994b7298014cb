#include "ptspec/scattering.hpp"

#include <algorithm>
#include <cmath>

#include "ptspec/log_gamma.hpp"
#include "ptspec/ode.hpp"

namespace ptspec {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

ScatteringPolynomial::ScatteringPolynomial(int degree) : degree_(degree) {
  if (degree < 0) throw InvalidParameter("ScatteringPolynomial: degree must be >= 0");
  std::vector<double> c(1, 1.0);  // p_0 = 1
  for (int m = 1; m <= degree; ++m) {
    const int w_prev = m;      // (m-1)+1 coefficients per direction
    const int w = m + 1;
    std::vector<double> next(static_cast<size_t>(w) * w, 0.0);
    auto prev = [&](int a, int b) { return c[static_cast<size_t>(a) * w_prev + b]; };
    auto add = [&](int a, int b, double v) { next[static_cast<size_t>(a) * w + b] += v; };
    for (int a = 0; a < w_prev; ++a) {
      for (int b = 0; b < w_prev; ++b) {
        const double v = prev(a, b);
        if (v == 0.0) continue;
        if (a >= 1) {          // (1 - t^2) d/dt
          add(a - 1, b, a * v);
          add(a + 1, b, -static_cast<double>(a) * v);
        }
        add(a, b + 1, v);      // kappa * p
        add(a + 1, b, -static_cast<double>(m) * v);  // -m t p
      }
    }
    c = std::move(next);
  }
  coeffs_ = std::move(c);
}

double ScatteringPolynomial::coefficient(int t_power, int kappa_power) const {
  if (t_power < 0 || t_power > degree_ || kappa_power < 0 || kappa_power > degree_)
    return 0.0;
  return coeffs_[static_cast<size_t>(t_power) * (degree_ + 1) + kappa_power];
}

std::vector<Complex> ScatteringPolynomial::t_coefficients(Complex kappa) const {
  const int w = degree_ + 1;
  std::vector<Complex> gamma(w);
  for (int a = 0; a < w; ++a) {
    Complex g = 0.0;
    for (int b = degree_; b >= 0; --b) g = g * kappa + coeffs_[static_cast<size_t>(a) * w + b];
    gamma[a] = g;
  }
  return gamma;
}

Complex ScatteringPolynomial::operator()(double t, Complex kappa) const {
  const auto gamma = t_coefficients(kappa);
  Complex p = 0.0;
  for (int a = degree_; a >= 0; --a) p = p * t + gamma[a];
  return p;
}

Complex ScatteringPolynomial::t_derivative(double t, Complex kappa) const {
  const auto gamma = t_coefficients(kappa);
  Complex p = 0.0;
  for (int a = degree_; a >= 1; --a) p = p * t + static_cast<double>(a) * gamma[a];
  return p;
}

Complex eigenfunction(const Potential& pot, double x, double k) {
  if (k == 0.0) throw DomainError("eigenfunction: k = 0 is the resonance point");
  const int n = pot.level();
  const double a = pot.scale();
  const double kk = k / a;                 // wavenumber of the unit-scale operator
  const double z = a * (x - pot.shift());
  Complex pref = 1.0;
  for (int j = 1; j <= n; ++j) pref /= Complex(j, std::abs(kk));
  if (kk < 0.0 && (n % 2) == 1) pref = -pref;
  const ScatteringPolynomial p(n);
  return pref * p(std::tanh(z), Complex(0.0, kk)) * std::exp(Complex(0.0, kk * z));
}

Complex eigenfunction_x_derivative(const Potential& pot, double x, double k) {
  if (k == 0.0) throw DomainError("eigenfunction_x_derivative: k = 0");
  const int n = pot.level();
  const double a = pot.scale();
  const double kk = k / a;
  const double z = a * (x - pot.shift());
  Complex pref = 1.0;
  for (int j = 1; j <= n; ++j) pref /= Complex(j, std::abs(kk));
  if (kk < 0.0 && (n % 2) == 1) pref = -pref;
  const ScatteringPolynomial p(n);
  const double t = std::tanh(z);
  const Complex kappa(0.0, kk);
  const Complex inner = (1.0 - t * t) * p.t_derivative(t, kappa) + kappa * p(t, kappa);
  return a * pref * inner * std::exp(Complex(0.0, kk * z));
}

Complex wave_product(const Potential& pot, double x, double y, double k) {
  const int n = pot.level();
  const double a = pot.scale();
  const double kk = k / a;
  const double zx = a * (x - pot.shift());
  const double zy = a * (y - pot.shift());
  double pref = 1.0;
  for (int j = 1; j <= n; ++j) pref /= (j * j + kk * kk);
  const ScatteringPolynomial p(n);
  const Complex kappa(0.0, kk);
  return pref * p(std::tanh(zx), kappa) * p(std::tanh(zy), -kappa) *
         std::exp(Complex(0.0, kk * (zx - zy)));
}

Complex transmission(int n, double k, Side side) {
  if (n < 0) throw InvalidParameter("transmission: n must be >= 0");
  if (k == 0.0) throw DomainError("transmission: k = 0 is the resonance point");
  Complex t = (n % 2 == 0) ? 1.0 : -1.0;
  for (int j = 1; j <= n; ++j) {
    const Complex num(j, side == Side::plus ? -k : k);
    const Complex den(j, side == Side::plus ? k : -k);
    t *= num / den;
  }
  return t;
}

std::vector<double> point_spectrum(int n) {
  if (n < 0) throw InvalidParameter("point_spectrum: n must be >= 0");
  std::vector<double> ev;
  ev.reserve(n);
  for (int j = 1; j <= n; ++j) ev.push_back(-static_cast<double>(j) * j);
  return ev;
}

std::vector<double> continuous_point_spectrum(double lambda) {
  if (!(lambda > 1.0)) throw InvalidParameter("continuous_point_spectrum: lambda must be > 1");
  std::vector<double> ev;
  for (int j = 0; lambda - 1.0 - j > 0.0; ++j) {
    const double mu = lambda - 1.0 - j;
    ev.push_back(-mu * mu);
  }
  return ev;
}

std::vector<double> Potential::eigenvalues() const {
  const auto base = has_integer_level() ? point_spectrum(level())
                                        : continuous_point_spectrum(lambda());
  std::vector<double> ev(base.size());
  for (size_t i = 0; i < base.size(); ++i) ev[i] = scale_ * scale_ * base[i];
  return ev;
}

namespace {

// Bound state j of the level-n operator is sech^j(z) Q(tanh z) with Q the
// polynomial produced by the ladder step P -> (1-t^2) P' - (j+m) t P.
// P -> (1 - t^2) P' - c t P on ascending coefficients.
std::vector<double> ladder_step(const std::vector<double>& p, double c) {
  std::vector<double> next(p.size() + 1, 0.0);
  for (size_t a = 0; a < p.size(); ++a) {
    if (a >= 1) {
      next[a - 1] += static_cast<double>(a) * p[a];
      next[a + 1] -= static_cast<double>(a) * p[a];
    }
    next[a + 1] -= c * p[a];
  }
  return next;
}

std::vector<double> ladder_polynomial(int n, int j) {
  std::vector<double> q{1.0};
  for (int m = j + 1; m <= n; ++m) q = ladder_step(q, static_cast<double>(j + m));
  return q;
}

double poly_eval(const std::vector<double>& p, double t) {
  double v = 0.0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * t + *it;
  return v;
}

}  // namespace

std::vector<BoundState> bound_states(const Potential& pot, const Grid& grid) {
  const int n = pot.level();
  if (n < 1) throw InvalidParameter("bound_states: requires level >= 1");
  const double a = pot.scale();
  const double reach = std::min(grid.x_max() - pot.shift(), pot.shift() - grid.x_min());
  if (1.0 / std::cosh(a * reach) >= 1e-10)
    throw PreconditionError("bound_states: grid too narrow for the sech decay");

  const auto w = grid.trapezoid_weights();
  std::vector<BoundState> out;
  out.reserve(n);
  for (int j = 1; j <= n; ++j) {
    const auto q = ladder_polynomial(n, j);
    FunctionSample u(grid);
    for (int i = 0; i < grid.n_points(); ++i) {
      const double z = a * (grid.x(i) - pot.shift());
      u.values[i] = std::pow(1.0 / std::cosh(z), j) * poly_eval(q, std::tanh(z));
    }
    double nrm2 = 0.0;
    int imax = 0;
    for (int i = 0; i < grid.n_points(); ++i) {
      nrm2 += w[i] * std::norm(u.values[i]);
      if (std::abs(u.values[i]) > std::abs(u.values[imax])) imax = i;
    }
    const double flip = u.values[imax].real() < 0.0 ? -1.0 : 1.0;
    const double scale = flip / std::sqrt(nrm2);
    for (auto& v : u.values) v *= scale;
    out.push_back(BoundState{j, -(a * j) * (a * j), std::move(u)});
  }
  return out;
}

BoundStateForm bound_state_form(const Potential& pot, int index) {
  const int n = pot.level();
  if (index < 1 || index > n) throw InvalidParameter("bound_state_form: index out of range");
  BoundStateForm f;
  f.index = index;
  f.eigenvalue = -(pot.scale() * index) * (pot.scale() * index);
  f.scale = pot.scale();
  f.shift = pot.shift();
  f.q = ladder_polynomial(n, index);
  // derivative chain: d/dz [sech^j Q] = sech^j [(1-t^2)Q' - j t Q]
  f.q1 = ladder_step(f.q, static_cast<double>(index));
  f.q2 = ladder_step(f.q1, static_cast<double>(index));
  return f;
}

double BoundStateForm::value(double x) const {
  const double z = scale * (x - shift);
  double v = 0.0;
  for (auto it = q.rbegin(); it != q.rend(); ++it) v = v * std::tanh(z) + *it;
  return std::pow(1.0 / std::cosh(z), index) * v;
}

double BoundStateForm::second_derivative(double x) const {
  const double z = scale * (x - shift);
  double v = 0.0;
  for (auto it = q2.rbegin(); it != q2.rend(); ++it) v = v * std::tanh(z) + *it;
  return scale * scale * std::pow(1.0 / std::cosh(z), index) * v;
}

ContinuousScattering continuous_scattering(double lambda, double scale, double k) {
  if (!(lambda > 1.0)) throw DomainError("continuous_scattering: requires lambda > 1");
  if (!(scale > 0.0)) throw InvalidParameter("continuous_scattering: scale must be positive");
  if (k == 0.0) throw DomainError("continuous_scattering: k = 0 is the resonance point");
  const double kh = k / scale;
  const Complex i(0.0, 1.0);
  const Complex common = log_gamma(i * kh) - i * kh * std::log(2.0);
  const Complex le =
      common - log_gamma(Complex(lambda / 2.0, kh / 2.0)) -
      log_gamma(Complex((1.0 - lambda) / 2.0, kh / 2.0));
  const Complex lo =
      common - log_gamma(Complex((lambda + 1.0) / 2.0, kh / 2.0)) -
      log_gamma(Complex(1.0 - lambda / 2.0, kh / 2.0));
  const double phi_e = std::arg(std::exp(le));
  const double phi_o = std::arg(std::exp(lo));
  const Complex ee = std::exp(2.0 * i * phi_e);
  const Complex eo = std::exp(2.0 * i * phi_o);
  return ContinuousScattering{phi_e, phi_o, (ee - eo) / 2.0, (ee + eo) / 2.0};
}

PhaseFit fit_standing_phases(const std::function<double(double)>& potential, double k,
                             const Grid& grid, double residual_tol) {
  if (k == 0.0) throw DomainError("fit_standing_phases: k = 0");
  k = std::abs(k);
  const double extent = grid.extent();
  const double fit_start = grid.x_max() - 0.1 * extent;
  if (fit_start <= 0.0)
    throw InvalidParameter("fit_standing_phases: grid must extend well past the origin");
  if (std::abs(potential(fit_start)) >= 1e-10 * k * k)
    throw PreconditionError("fit_standing_phases: potential not negligible in the fit window");

  const int i0 = static_cast<int>(std::ceil((fit_start - grid.x_min()) / grid.spacing() - 1e-9));
  const int m = grid.n_points() - i0;
  if (m < 8) throw InvalidParameter("fit_standing_phases: too few points in the fit window");
  const Grid fit_grid(grid.x(i0), grid.x_max(), m);

  double phases[2];
  double worst = 0.0;
  for (int parity = 0; parity < 2; ++parity) {
    const Complex u0 = parity == 0 ? 1.0 : 0.0;
    const Complex du0 = parity == 0 ? 0.0 : 1.0;
    const auto sol = integrate_schrodinger(potential, k * k, 0.0, grid.x_max(), u0, du0,
                                           fit_grid);
    double scc = 0.0, scs = 0.0, sss = 0.0, bc = 0.0, bs = 0.0;
    for (int i = 0; i < m; ++i) {
      const double c = std::cos(k * fit_grid.x(i));
      const double s = std::sin(k * fit_grid.x(i));
      const double u = sol.u.values[i].real();
      scc += c * c;
      scs += c * s;
      sss += s * s;
      bc += u * c;
      bs += u * s;
    }
    const double det = scc * sss - scs * scs;
    const double A = (bc * sss - bs * scs) / det;
    const double B = (bs * scc - bc * scs) / det;
    const double amp = std::hypot(A, B);
    double err2 = 0.0;
    for (int i = 0; i < m; ++i) {
      const double fitv = A * std::cos(k * fit_grid.x(i)) + B * std::sin(k * fit_grid.x(i));
      const double d = sol.u.values[i].real() - fitv;
      err2 += d * d;
    }
    const double residual = std::sqrt(err2 / m) / amp;
    worst = std::max(worst, residual);
    if (residual > residual_tol)
      throw ExtractionError("fit_standing_phases: asymptotic fit residual too large");
    // u = C cos(kx + phi) with phi = -atan2(B, A), reduced mod pi to [0, pi)
    double phi = -std::atan2(B, A);
    phi -= kPi * std::floor(phi / kPi);
    phases[parity] = phi;
  }
  return PhaseFit{phases[0], phases[1], worst};
}

ContinuousScattering ode_phase_extraction(double lambda, double scale, double k,
                                          const Grid& grid) {
  if (!(lambda > 1.0)) throw DomainError("ode_phase_extraction: requires lambda > 1");
  const Potential pot = Potential::continuous(lambda, scale);
  const auto fit = fit_standing_phases([&](double x) { return pot(x); }, k, grid);
  const Complex i(0.0, 1.0);
  const Complex ee = std::exp(2.0 * i * fit.phi_even);
  const Complex eo = std::exp(2.0 * i * fit.phi_odd);
  return ContinuousScattering{fit.phi_even, fit.phi_odd, (ee - eo) / 2.0, (ee + eo) / 2.0};
}

Complex orthogonality_integral(double k, double eta, const Grid& grid) {
  const auto w = grid.trapezoid_weights();
  Complex s = 0.0;
  for (int i = 0; i < grid.n_points(); ++i) {
    const double z = grid.x(i);
    const Complex f = (Complex(0.0, eta) - k * std::tanh(k * z)) / std::cosh(k * z) *
                      std::exp(Complex(0.0, eta * z));
    s += w[i] * f;
  }
  return s;
}

}  // namespace ptspec
