#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "ptspec/errors.hpp"

namespace ptspec {

/// The sech^2 potential family V(x) = -lambda(lambda-1) a^2 sech^2(a(x-h)),
/// either at integer level n (lambda = n+1) or at continuous lambda > 1.
class Potential {
 public:
  static Potential integer_level(int n, double scale = 1.0, double shift = 0.0) {
    if (n < 0) throw InvalidParameter("Potential: level must be >= 0");
    Potential p(scale, shift);
    p.level_ = n;
    return p;
  }

  static Potential continuous(double lambda, double scale = 1.0, double shift = 0.0) {
    if (!(lambda > 1.0)) throw InvalidParameter("Potential: continuous lambda must be > 1");
    Potential p(scale, shift);
    p.lambda_ = lambda;
    return p;
  }

  bool has_integer_level() const { return level_.has_value(); }

  int level() const {
    if (!level_) throw InvalidParameter("Potential: continuous case has no integer level");
    return *level_;
  }

  double lambda() const { return level_ ? *level_ + 1.0 : *lambda_; }
  double scale() const { return scale_; }
  double shift() const { return shift_; }

  double operator()(double x) const {
    const double l = lambda();
    const double s = 1.0 / std::cosh(scale_ * (x - shift_));
    return -l * (l - 1.0) * scale_ * scale_ * s * s;
  }

  /// Point spectrum of this operator (scale enters quadratically).
  std::vector<double> eigenvalues() const;

  bool operator==(const Potential& o) const {
    return level_ == o.level_ && lambda_ == o.lambda_ && scale_ == o.scale_ &&
           shift_ == o.shift_;
  }

 private:
  Potential(double scale, double shift) : scale_(scale), shift_(shift) {
    if (!(scale > 0.0)) throw InvalidParameter("Potential: scale must be positive");
  }

  std::optional<int> level_;
  std::optional<double> lambda_;
  double scale_;
  double shift_;
};

}  // namespace ptspec
