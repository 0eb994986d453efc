#pragma once

#include <vector>

#include "kgspec/kernel.hpp"

namespace kgspec::specfun {

/// Riccati-Bessel order nu. The interior solution z j_nu(z) is proportional
/// to sqrt(z) J_{nu+1/2}(z) and the decaying exterior one to sqrt(y) K_{nu+1/2}(y),
/// so every order used here has 2 nu integral and nu >= -1.
struct Order {
  double nu = 0.0;

  /// Throws InvalidInput unless 2 nu is an integer >= -2.
  static Order make(double nu);

  /// (2l + d - 3) / 2 for d >= 2. In one dimension the even states use
  /// nu = -1 (cos z) and the odd states nu = 0 (sin z).
  static Order for_channel(const Channel& channel);

  /// Cylinder order mu = nu + 1/2.
  double mu() const { return nu + 0.5; }
  /// nu(nu + 1), the centrifugal coefficient.
  double q() const { return nu * (nu + 1.0); }
  /// True when mu is half an odd integer; the functions are then elementary.
  bool elementary() const;

  friend bool operator==(const Order&, const Order&) = default;
};

/// d/dz ln[z j_nu(z)]. Poles sit at the zeros of z j_nu; the value there is
/// huge or infinite, never NaN.
double riccati_interior_logderiv(Order order, double z);

/// d/dy ln[y k_nu(y)] for the exponentially decaying solution. Negative for
/// nu >= 0; for nu = -1/2 it turns positive as y -> 0.
double riccati_exterior_logderiv(Order order, double y);

/// sqrt(pi z / 2) J_mu(z), which equals z j_nu(z) for integer nu.
double riccati_interior_value(Order order, double z);

/// The k-th positive zero (k >= 1) of z j_nu(z); index 0 returns 0.
/// Zeros are cached per order and are safe to query from several threads.
double interior_zero(Order order, int k);

/// K_1(y) / K_0(y) by power series for y <= 2 and Steed's continued fraction
/// beyond.
double bessel_k1_over_k0(double y);

}  // namespace kgspec::specfun
