#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace kgspec {

// Errors ----------------------------------------------------------------------

/// Bad user input: invalid quantum numbers, |E| >= m, malformed shapes.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The requested state does not exist at this energy (or for this well).
class NoBoundState : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numerical contract that must hold for every solved state was broken.
/// Indicates a solver defect rather than bad input.
class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Domain types ----------------------------------------------------------------

/// Quantum-number context of a state.
///
/// `n` is the node count of the reduced wavefunction on (0, inf). In one
/// dimension `n` counts nodes on the whole line and fixes the parity: even `n`
/// is an even state, odd `n` an odd state.
struct Channel {
  int d = 1;
  int l = 0;
  int n = 0;

  /// Validates and returns the channel; throws InvalidInput otherwise.
  static Channel make(int d, int l, int n);

  bool one_dimensional() const { return d == 1; }
  bool even_parity() const { return n % 2 == 0; }

  /// d = 2, l = 0 is integrated in non-reduced form.
  bool needs_nonreduced() const { return d == 2 && l == 0; }

  /// Nodes expected strictly inside (0, inf) for the half-line solution.
  int half_line_nodes() const { return d == 1 ? n / 2 : n; }

  /// Small-r exponent of the reduced wavefunction, (2l + d - 1) / 2.
  double regular_exponent() const { return 0.5 * (2 * l + d - 1); }

  std::string label() const;

  friend bool operator==(const Channel&, const Channel&) = default;
};

/// Particle mass in natural units.
class PhysicalContext {
 public:
  explicit PhysicalContext(double m = 1.0);
  double m() const { return m_; }
  bool admits(double E) const { return std::abs(E) < m_; }
  /// Throws InvalidInput unless |E| < m.
  void require_admissible(double E) const;

 private:
  double m_;
};

/// One solved eigenpair (E, v) with expectation values of the shape.
struct SpectralPoint {
  double E = 0.0;
  double v = 0.0;
  int n = 0;
  double f_mean = 0.0;   ///< <f>
  double f2_mean = 0.0;  ///< <f^2>
  double norm_residual = 0.0;
  double match_residual = 0.0;

  /// 2 E <f> < v <f^2>, true for every bound state with |E| < m.
  bool satisfies_moment_inequality() const { return 2.0 * E * f_mean < v * f2_mean; }

  /// E <f> - v <f^2>; negative for every valid point.
  double slope_denominator() const { return E * f_mean - v * f2_mean; }
};

/// v = G(E) for one channel and shape, sampled on an increasing energy grid.
struct SpectralCurve {
  Channel channel;
  std::string shape_id;
  std::vector<SpectralPoint> points;
  std::vector<double> gaps;  ///< grid energies where the state was not found

  /// Throws InvariantViolation if E is not strictly increasing.
  void check_ordered() const;
  double max_v() const;
};

/// Reduced wavefunction samples on the solver grid.
struct RadialSolution {
  std::vector<double> grid;
  std::vector<double> phi;
  int nodes = 0;
  double logderiv_at_match = 0.0;
  double r_match = 0.0;
  bool normalized = false;
};

// Shared operations -------------------------------------------------------------

/// Centrifugal coefficient Q = (2l + d - 1)(2l + d - 3) / 4; zero for d = 1.
double centrifugal_q(const Channel& channel);

/// sqrt(m^2 - E^2); throws InvalidInput when |E| >= m.
double asymptotic_k(double E, const PhysicalContext& ctx);

/// Strict sign changes of `phi`. Samples below 1e-12 of the running maximum
/// amplitude count as zero and never create a change on their own.
int count_nodes(std::span<const double> phi);

/// Trapezoid rule on a non-uniform grid.
double trapezoid(std::span<const double> x, std::span<const double> y);

/// Relative threshold used by count_nodes.
inline constexpr double kNodeZeroThreshold = 1e-12;

/// Default concavity tolerance, relative to max |v| on a curve.
inline constexpr double kConcavityRelTol = 1e-6;

}  // namespace kgspec
