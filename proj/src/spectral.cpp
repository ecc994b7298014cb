#include "ptspec/spectral.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "ptspec/parallel.hpp"

namespace ptspec {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;
}  // namespace

DistortedTransform::DistortedTransform(const Potential& pot, const Grid& grid,
                                       KQuadrature kquad, unsigned workers)
    : pot_(pot), grid_(grid), kq_(std::move(kquad)), workers_(workers) {
  if (!pot.has_integer_level())
    throw InvalidParameter("DistortedTransform: requires an integer-level potential");
  if (kq_.nodes.empty()) throw InvalidParameter("DistortedTransform: empty quadrature");
  if (kq_.spacing_bound() > KQuadrature::max_spacing(grid.extent()) * (1.0 + 1e-12))
    throw ResolutionError("DistortedTransform: k spacing too coarse for the grid extent");

  waves_ = wave_matrix(grid_);

  const auto wxv = grid_.trapezoid_weights();
  wx_ = Eigen::Map<const Eigen::VectorXd>(wxv.data(), wxv.size());
  wk_ = Eigen::Map<const Eigen::VectorXd>(kq_.weights.data(), kq_.weights.size());

  if (pot_.level() >= 1) bound_ = ptspec::bound_states(pot_, grid_);
  bound_mat_.resize(static_cast<Eigen::Index>(bound_.size()), grid_.n_points());
  for (size_t b = 0; b < bound_.size(); ++b)
    for (int i = 0; i < grid_.n_points(); ++i)
      bound_mat_(static_cast<Eigen::Index>(b), i) = bound_[b].samples.values[i].real();
}

Eigen::MatrixXcd DistortedTransform::wave_matrix(const Grid& g) const {
  const int n = pot_.level();
  const double a = pot_.scale();
  const int nk = static_cast<int>(kq_.nodes.size());
  const int nx = g.n_points();
  Eigen::MatrixXcd waves(nk, nx);
  std::vector<double> z(nx), tz(nx);
  for (int i = 0; i < nx; ++i) {
    z[i] = a * (g.x(i) - pot_.shift());
    tz[i] = std::tanh(z[i]);
  }
  const ScatteringPolynomial poly(n);
  parallel_for(static_cast<size_t>(nk), workers_, [&](size_t m) {
    const double k = kq_.nodes[m];
    const double kh = k / a;
    Complex pref = 1.0;
    for (int j = 1; j <= n; ++j) pref /= Complex(j, std::abs(kh));
    if (kh < 0.0 && (n % 2) == 1) pref = -pref;
    const auto gamma = poly.t_coefficients(Complex(0.0, kh));
    for (int i = 0; i < nx; ++i) {
      Complex p = 0.0;
      for (int aco = n; aco >= 0; --aco) p = p * tz[i] + gamma[aco];
      waves(static_cast<Eigen::Index>(m), i) =
          pref * p * std::polar(1.0, kh * z[i]);
    }
  });
  return waves;
}

TransformCoefficients DistortedTransform::forward(const FunctionSample& f) const {
  if (!(f.grid == grid_)) throw InvalidParameter("DistortedTransform::forward: grid mismatch");
  const Eigen::Map<const Eigen::VectorXcd> fv(f.values.data(), f.values.size());
  const Eigen::VectorXcd wf = fv.cwiseProduct(wx_.cast<Complex>());
  TransformCoefficients out;
  out.kquad = kq_;
  Eigen::VectorXcd ac = waves_.conjugate() * wf;
  out.ac_values.assign(ac.data(), ac.data() + ac.size());
  Eigen::VectorXcd pp = bound_mat_.cast<Complex>() * wf;
  out.pp_values.assign(pp.data(), pp.data() + pp.size());
  return out;
}

FunctionSample DistortedTransform::inverse(const TransformCoefficients& coeffs) const {
  return inverse_on(coeffs, grid_);
}

FunctionSample DistortedTransform::inverse_on(const TransformCoefficients& coeffs,
                                              const Grid& out) const {
  if (coeffs.ac_values.size() != kq_.nodes.size() ||
      coeffs.pp_values.size() != bound_.size())
    throw InvalidParameter("DistortedTransform::inverse: coefficient shape mismatch");
  const Eigen::MatrixXcd waves = (out == grid_) ? waves_ : wave_matrix(out);
  const Eigen::Map<const Eigen::VectorXcd> ac(coeffs.ac_values.data(),
                                              coeffs.ac_values.size());
  Eigen::VectorXcd g = waves.transpose() * wk_.cast<Complex>().cwiseProduct(ac) / kTwoPi;
  if (!bound_.empty()) {
    Eigen::MatrixXd bm(static_cast<Eigen::Index>(bound_.size()), out.n_points());
    if (out == grid_) {
      bm = bound_mat_;
    } else {
      const auto fresh = ptspec::bound_states(pot_, out);
      for (size_t b = 0; b < fresh.size(); ++b)
        for (int i = 0; i < out.n_points(); ++i)
          bm(static_cast<Eigen::Index>(b), i) = fresh[b].samples.values[i].real();
    }
    const Eigen::Map<const Eigen::VectorXcd> pp(coeffs.pp_values.data(),
                                                coeffs.pp_values.size());
    g += bm.transpose().cast<Complex>() * pp;
  }
  FunctionSample f(out);
  for (int i = 0; i < out.n_points(); ++i) f.values[i] = g(i);
  return f;
}

FunctionSample DistortedTransform::apply(const Symbol& symbol, const FunctionSample& f) const {
  return apply_on(symbol, f, grid_);
}

FunctionSample DistortedTransform::apply_on(const Symbol& symbol, const FunctionSample& f,
                                            const Grid& out) const {
  TransformCoefficients c = forward(f);
  for (size_t m = 0; m < c.ac_values.size(); ++m) {
    const double k = kq_.nodes[m];
    c.ac_values[m] *= symbol(k * k);
  }
  for (size_t b = 0; b < c.pp_values.size(); ++b)
    c.pp_values[b] *= symbol(bound_[b].eigenvalue);
  return inverse_on(c, out);
}

TransformCoefficients forward_transform(const FunctionSample& f, const Potential& pot,
                                        const KQuadrature& kq) {
  return DistortedTransform(pot, f.grid, kq).forward(f);
}

FunctionSample inverse_transform(const TransformCoefficients& coeffs, const Potential& pot,
                                 const Grid& grid) {
  return DistortedTransform(pot, grid, coeffs.kquad).inverse(coeffs);
}

FunctionSample apply_multiplier(const Symbol& symbol, const FunctionSample& f,
                                const Potential& pot, const KQuadrature& kq) {
  return DistortedTransform(pot, f.grid, kq).apply(symbol, f);
}

int max_band_for(const Grid& grid) {
  // 2^{j/2} <= pi / spacing
  return static_cast<int>(std::floor(2.0 * std::log2(kPi / grid.spacing())));
}

namespace {

// K(x,y) = (2 pi)^{-1} sum_m c_m P(x_i) conj(P(y_l)) e^{i k_m (x_i - y_l)}
// assembled as U diag(c) V^H with U = V the polynomial-times-phase matrix.
Eigen::MatrixXcd symbol_kernel_ac(const Potential& pot, const Grid& grid,
                                  const Symbol& symbol, const KQuadrature& kq,
                                  unsigned workers) {
  const int n = pot.level();
  const double a = pot.scale();
  const int nk = static_cast<int>(kq.nodes.size());
  const int nx = grid.n_points();
  Eigen::MatrixXcd U(nx, nk);
  Eigen::VectorXcd c(nk);
  std::vector<double> z(nx), tz(nx);
  for (int i = 0; i < nx; ++i) {
    z[i] = a * (grid.x(i) - pot.shift());
    tz[i] = std::tanh(z[i]);
  }
  const ScatteringPolynomial poly(n);
  parallel_for(static_cast<size_t>(nk), workers, [&](size_t m) {
    const double k = kq.nodes[m];
    const double kh = k / a;
    double pref = 1.0;
    for (int j = 1; j <= n; ++j) pref /= (j * j + kh * kh);
    c(static_cast<Eigen::Index>(m)) = kq.weights[m] * symbol(k * k) * pref / kTwoPi;
    const auto gamma = poly.t_coefficients(Complex(0.0, kh));
    for (int i = 0; i < nx; ++i) {
      Complex p = 0.0;
      for (int aco = n; aco >= 0; --aco) p = p * tz[i] + gamma[aco];
      U(i, static_cast<Eigen::Index>(m)) = p * std::polar(1.0, kh * z[i]);
    }
  });
  return U * c.asDiagonal() * U.adjoint();
}

Eigen::MatrixXcd symbol_kernel_dx(const Potential& pot, const Grid& grid,
                                  const Symbol& symbol, const KQuadrature& kq,
                                  unsigned workers) {
  const int n = pot.level();
  const double a = pot.scale();
  const int nk = static_cast<int>(kq.nodes.size());
  const int nx = grid.n_points();
  Eigen::MatrixXcd U(nx, nk), dU(nx, nk);
  Eigen::VectorXcd c(nk);
  std::vector<double> z(nx), tz(nx);
  for (int i = 0; i < nx; ++i) {
    z[i] = a * (grid.x(i) - pot.shift());
    tz[i] = std::tanh(z[i]);
  }
  const ScatteringPolynomial poly(n);
  parallel_for(static_cast<size_t>(nk), workers, [&](size_t m) {
    const double k = kq.nodes[m];
    const double kh = k / a;
    double pref = 1.0;
    for (int j = 1; j <= n; ++j) pref /= (j * j + kh * kh);
    c(static_cast<Eigen::Index>(m)) = kq.weights[m] * symbol(k * k) * pref / kTwoPi;
    const auto gamma = poly.t_coefficients(Complex(0.0, kh));
    for (int i = 0; i < nx; ++i) {
      Complex p = 0.0, pt = 0.0;
      for (int aco = n; aco >= 0; --aco) p = p * tz[i] + gamma[aco];
      for (int aco = n; aco >= 1; --aco) pt = pt * tz[i] + static_cast<double>(aco) * gamma[aco];
      const Complex phase = std::polar(1.0, kh * z[i]);
      U(i, static_cast<Eigen::Index>(m)) = p * phase;
      // d/dx [P e^{ikx}] = a [(1 - t^2) P_t + i k̂ P] e^{i k̂ z}
      dU(i, static_cast<Eigen::Index>(m)) =
          a * ((1.0 - tz[i] * tz[i]) * pt + Complex(0.0, kh) * p) * phase;
    }
  });
  return dU * c.asDiagonal() * U.adjoint();
}

}  // namespace

MultiplierKernel build_band_kernel(const DyadicSystem& system, int j, const Potential& pot,
                                   const Grid& grid, bool with_derivative, unsigned workers) {
  if (j < 0) throw InvalidParameter("build_band_kernel: band must be >= 0");
  if (j > max_band_for(grid))
    throw ResolutionError("build_band_kernel: band exceeds the grid Nyquist bound");
  const KQuadrature kq = KQuadrature::dyadic_band(j, grid.extent());
  const Symbol sym = [&](double xi) { return system.band_symbol(j, xi); };
  MultiplierKernel out{j, grid, symbol_kernel_ac(pot, grid, sym, kq, workers), std::nullopt};
  if (with_derivative) out.dmatrix = symbol_kernel_dx(pot, grid, sym, kq, workers);
  return out;
}

FunctionSample apply_band_kernel(const MultiplierKernel& kernel, const DyadicSystem& system,
                                 const Potential& pot, const FunctionSample& f) {
  if (!(f.grid == kernel.grid)) throw InvalidParameter("apply_band_kernel: grid mismatch");
  const auto wv = f.grid.trapezoid_weights();
  Eigen::VectorXcd wf(f.grid.n_points());
  for (int i = 0; i < f.grid.n_points(); ++i) wf(i) = wv[i] * f.values[i];
  Eigen::VectorXcd g = kernel.matrix * wf;
  FunctionSample out(f.grid);
  for (int i = 0; i < f.grid.n_points(); ++i) out.values[i] = g(i);
  if (pot.level() >= 1) {
    for (const auto& b : bound_states(pot, f.grid)) {
      const double w = system.band_symbol(kernel.band, b.eigenvalue);
      if (w == 0.0) continue;
      out = out + (w * inner_product(b.samples, f)) * b.samples;
    }
  }
  return out;
}

DecayProfile decay_profile(const MultiplierKernel& kernel, int n_power) {
  if (n_power < 1) throw InvalidParameter("decay_profile: n_power must be >= 1");
  const double lam = std::pow(2.0, kernel.band / 2.0);
  const int nx = kernel.grid.n_points();
  double c = 0.0, d = 0.0;
  for (int i = 0; i < nx; ++i) {
    for (int l = 0; l < nx; ++l) {
      const double w = 1.0 + lam * std::abs(kernel.grid.x(i) - kernel.grid.x(l));
      const double wn = std::pow(w, n_power);
      c = std::max(c, std::abs(kernel.matrix(i, l)) * wn);
      if (kernel.dmatrix) d = std::max(d, std::abs((*kernel.dmatrix)(i, l)) * wn);
    }
  }
  return DecayProfile{c / lam,
                      kernel.dmatrix ? d / (lam * lam) : std::nan("")};
}

CovarianceReport covariance_check(const Potential& pot, const Symbol& symbol, double k_max,
                                  double scale, double shift, const Grid& grid,
                                  unsigned workers) {
  const int n = pot.level();
  auto full_kernel = [&](const Potential& p, const Grid& g, const Symbol& sym,
                         double km) -> Eigen::MatrixXcd {
    const KQuadrature kq = KQuadrature::full_range(km, g.extent());
    Eigen::MatrixXcd K = symbol_kernel_ac(p, g, sym, kq, workers);
    if (p.level() >= 1) {
      for (const auto& b : bound_states(p, g)) {
        Eigen::VectorXd e(g.n_points());
        for (int i = 0; i < g.n_points(); ++i) e(i) = b.samples.values[i].real();
        K += sym(b.eigenvalue) * (e * e.transpose()).cast<Complex>();
      }
    }
    return K;
  };

  // Scaling: phi(a^{-2} H_a)(x,y) = a phi(H)(ax, ay); the symbol applied to
  // the scaled operator is xi -> phi(xi / a^2).
  const double a = scale;
  const Potential scaled = Potential::integer_level(n, pot.scale() * a, pot.shift() / a);
  const Symbol rescaled = [&](double xi) { return symbol(xi / (a * a)); };
  const Grid mapped(a * grid.x_min(), a * grid.x_max(), grid.n_points());
  const Eigen::MatrixXcd lhs_s = full_kernel(scaled, grid, rescaled, a * k_max);
  const Eigen::MatrixXcd rhs_s = a * full_kernel(pot, mapped, symbol, k_max);
  const double dev_scale = (lhs_s - rhs_s).cwiseAbs().maxCoeff();

  // Translation: phi(H_h)(x,y) = phi(H)(x-h, y-h).
  const Potential shifted = Potential::integer_level(n, pot.scale(), pot.shift() + shift);
  const Grid moved(grid.x_min() - shift, grid.x_max() - shift, grid.n_points());
  const Eigen::MatrixXcd lhs_t = full_kernel(shifted, grid, symbol, k_max);
  const Eigen::MatrixXcd rhs_t = full_kernel(pot, moved, symbol, k_max);
  const double dev_shift = (lhs_t - rhs_t).cwiseAbs().maxCoeff();

  return CovarianceReport{dev_scale, dev_shift};
}

void write_kernel_csv(const std::filesystem::path& path, const MultiplierKernel& kernel) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_kernel_csv: cannot open " + path.string());
  out << "x,y,re,im\n";
  out.precision(17);
  for (int i = 0; i < kernel.grid.n_points(); ++i)
    for (int l = 0; l < kernel.grid.n_points(); ++l)
      out << kernel.grid.x(i) << ',' << kernel.grid.x(l) << ','
          << kernel.matrix(i, l).real() << ',' << kernel.matrix(i, l).imag() << '\n';
}

namespace {
constexpr char kKernelMagic[8] = {'P', 'T', 'K', 'E', 'R', 'N', '1', '\0'};

void put_f64(std::ofstream& out, double v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}
void put_i64(std::ofstream& out, std::int64_t v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}
}  // namespace

void write_kernel_binary(const std::filesystem::path& path, const MultiplierKernel& kernel) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_kernel_binary: cannot open " + path.string());
  out.write(kKernelMagic, sizeof kKernelMagic);
  put_i64(out, kernel.band);
  put_i64(out, kernel.dmatrix ? 1 : 0);
  put_f64(out, kernel.grid.x_min());
  put_f64(out, kernel.grid.x_max());
  put_i64(out, kernel.grid.n_points());
  auto dump = [&](const Eigen::MatrixXcd& m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index l = 0; l < m.cols(); ++l) {
        put_f64(out, m(i, l).real());
        put_f64(out, m(i, l).imag());
      }
  };
  dump(kernel.matrix);
  if (kernel.dmatrix) dump(*kernel.dmatrix);
}

MultiplierKernel read_kernel_binary(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("read_kernel_binary: cannot open " + path.string());
  char magic[8];
  in.read(magic, sizeof magic);
  if (!in || std::memcmp(magic, kKernelMagic, sizeof magic) != 0)
    throw std::runtime_error("read_kernel_binary: bad header in " + path.string());
  auto get_i64 = [&]() {
    std::int64_t v = 0;
    in.read(reinterpret_cast<char*>(&v), sizeof v);
    return v;
  };
  auto get_f64 = [&]() {
    double v = 0;
    in.read(reinterpret_cast<char*>(&v), sizeof v);
    return v;
  };
  const auto band = get_i64();
  const auto has_d = get_i64();
  const double xmin = get_f64();
  const double xmax = get_f64();
  const auto n = get_i64();
  MultiplierKernel k{static_cast<int>(band), Grid(xmin, xmax, static_cast<int>(n)),
                     Eigen::MatrixXcd(n, n), std::nullopt};
  auto load = [&](Eigen::MatrixXcd& m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index l = 0; l < m.cols(); ++l) {
        const double re = get_f64();
        const double im = get_f64();
        m(i, l) = Complex(re, im);
      }
  };
  load(k.matrix);
  if (has_d) {
    k.dmatrix = Eigen::MatrixXcd(n, n);
    load(*k.dmatrix);
  }
  if (!in) throw std::runtime_error("read_kernel_binary: truncated file " + path.string());
  return k;
}

}  // namespace ptspec
