#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "ptspec/errors.hpp"

namespace ptspec {

using Complex = std::complex<double>;

/// Uniform spatial grid on [x_min, x_max] with n_points >= 2.
class Grid {
 public:
  Grid(double x_min, double x_max, int n_points)
      : x_min_(x_min), x_max_(x_max), n_points_(n_points) {
    if (n_points < 2) throw InvalidParameter("Grid: n_points must be >= 2");
    if (!(x_min < x_max)) throw InvalidParameter("Grid: requires x_min < x_max");
  }

  double x_min() const { return x_min_; }
  double x_max() const { return x_max_; }
  int n_points() const { return n_points_; }
  double spacing() const { return (x_max_ - x_min_) / (n_points_ - 1); }
  double extent() const { return x_max_ - x_min_; }
  double x(int i) const { return x_min_ + spacing() * i; }

  std::vector<double> points() const {
    std::vector<double> p(n_points_);
    for (int i = 0; i < n_points_; ++i) p[i] = x(i);
    return p;
  }

  /// Composite trapezoid weights (spacing, halved at the two ends).
  std::vector<double> trapezoid_weights() const {
    std::vector<double> w(n_points_, spacing());
    w.front() *= 0.5;
    w.back() *= 0.5;
    return w;
  }

  bool operator==(const Grid&) const = default;

 private:
  double x_min_;
  double x_max_;
  int n_points_;
};

/// Complex-valued samples of a function on a Grid.
struct FunctionSample {
  Grid grid;
  std::vector<Complex> values;

  explicit FunctionSample(const Grid& g) : grid(g), values(g.n_points(), Complex(0.0)) {}

  FunctionSample(const Grid& g, std::vector<Complex> v) : grid(g), values(std::move(v)) {
    if (static_cast<int>(values.size()) != grid.n_points())
      throw InvalidParameter("FunctionSample: values length must equal grid.n_points");
  }
};

/// Sample a scalar function on a grid.
inline FunctionSample sample(const Grid& g, const std::function<Complex(double)>& f) {
  FunctionSample out(g);
  for (int i = 0; i < g.n_points(); ++i) out.values[i] = f(g.x(i));
  return out;
}

inline FunctionSample sample_real(const Grid& g, const std::function<double(double)>& f) {
  FunctionSample out(g);
  for (int i = 0; i < g.n_points(); ++i) out.values[i] = f(g.x(i));
  return out;
}

inline FunctionSample operator+(const FunctionSample& a, const FunctionSample& b) {
  if (!(a.grid == b.grid)) throw InvalidParameter("FunctionSample: grid mismatch");
  FunctionSample out(a.grid, a.values);
  for (size_t i = 0; i < out.values.size(); ++i) out.values[i] += b.values[i];
  return out;
}

inline FunctionSample operator-(const FunctionSample& a, const FunctionSample& b) {
  if (!(a.grid == b.grid)) throw InvalidParameter("FunctionSample: grid mismatch");
  FunctionSample out(a.grid, a.values);
  for (size_t i = 0; i < out.values.size(); ++i) out.values[i] -= b.values[i];
  return out;
}

inline FunctionSample operator*(Complex c, const FunctionSample& f) {
  FunctionSample out(f.grid, f.values);
  for (auto& v : out.values) v *= c;
  return out;
}

/// Trapezoid quadrature of the samples over the grid.
inline Complex integrate(const FunctionSample& f) {
  const auto w = f.grid.trapezoid_weights();
  Complex s = 0.0;
  for (size_t i = 0; i < f.values.size(); ++i) s += w[i] * f.values[i];
  return s;
}

/// Discrete L2 inner product (conjugate-linear in the first slot).
inline Complex inner_product(const FunctionSample& a, const FunctionSample& b) {
  if (!(a.grid == b.grid)) throw InvalidParameter("inner_product: grid mismatch");
  const auto w = a.grid.trapezoid_weights();
  Complex s = 0.0;
  for (size_t i = 0; i < a.values.size(); ++i) s += w[i] * std::conj(a.values[i]) * b.values[i];
  return s;
}

}  // namespace ptspec
