#pragma once

#include <string>
#include <string_view>

#include "ptspec/errors.hpp"

namespace ptspec {

/// A smooth dyadic window system (Phi, phi, Psi, psi):
///   supp Phi, Psi in {|xi| <= 1},  |Phi|,|Psi| >= c on |xi| <= 1/2,
///   supp phi, psi in {1/4 <= |xi| <= 1},  |phi|,|psi| >= c on 3/8 <= |xi| <= 7/8,
///   Phi(xi)Psi(xi) + sum_{j>=1} phi(2^{-j}xi) psi(2^{-j}xi) = 1.
///
/// Both variants take Psi = Phi and psi = phi as square roots of a telescoping
/// partition eta(xi) - eta(2 xi), which makes the identity hold by
/// construction: eta = 1 on |xi| <= 1/2 and decays smoothly to 0 at |xi| = T.
class DyadicSystem {
 public:
  /// variant: "sqrt-partition" (T = 0.92, plain profile) or
  ///          "shifted-sqrt"   (T = 0.98, steepened profile).
  static DyadicSystem build(std::string_view variant);

  double Phi(double xi) const;
  double phi(double xi) const;
  double Psi(double xi) const { return Phi(xi); }
  double psi(double xi) const { return phi(xi); }

  /// phi_j: the band-j symbol as a function of the spectral variable xi.
  /// j = 0 is the low-energy window Phi in the inhomogeneous calculus.
  double band_symbol(int j, double xi) const;

  /// phi(2^{-j} xi) for every j, the homogeneous family (no Phi block).
  double homogeneous_symbol(int j, double xi) const;

  double c_lower() const { return c_lower_; }
  const std::string& variant() const { return variant_; }
  double support_edge() const { return edge_; }

 private:
  DyadicSystem(std::string variant, double edge, double shape);

  double eta(double xi) const;

  std::string variant_;
  double edge_;   // eta vanishes for |xi| >= edge
  double shape_;  // profile exponent of the smooth step argument
  double c_lower_ = 0.0;
};

}  // namespace ptspec
