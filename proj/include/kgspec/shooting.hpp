#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kgspec/kernel.hpp"
#include "kgspec/potentials.hpp"

namespace kgspec::shooting {

/// Zero means "choose automatically" for every length and coupling field.
struct ShootConfig {
  double step = 0.0;        ///< largest RK4 step; default support / 10^4
  double r_start = 0.0;     ///< series start for d > 1; default 10^-6 support
  double r_match = 0.0;     ///< matching radius; default the shape's support radius
  double v_start = 0.0;     ///< first coupling of the scan; default (m - E) / |f(0)|
  double v_cap = 0.0;       ///< scan ceiling; default 50 m / |f(0)|
  double tol_v = 1e-12;     ///< relative bisection tolerance on v
  double scan_factor = 1.05;
  double graded_ratio = 0.01;  ///< near-origin step is at most this times r (d > 1)

  /// Throws InvalidInput on non-positive tolerances or inconsistent radii.
  void validate() const;
  /// Stable text form, used in configuration hashes.
  std::string describe() const;
};

/// The outward-integration grid and cached shape samples for one
/// (shape, channel) pair. Reusable for any (E, v).
class ShootingProblem {
 public:
  ShootingProblem(Shape shape, Channel channel, PhysicalContext ctx, ShootConfig cfg = {});

  const Shape& shape() const { return shape_; }
  const Channel& channel() const { return channel_; }
  const PhysicalContext& context() const { return ctx_; }
  const ShootConfig& config() const { return cfg_; }
  double r_match() const { return r_match_; }
  const std::vector<double>& grid() const { return grid_; }

  /// RK4 solution on the grid, unnormalized: outward from the origin to the
  /// last oscillatory grid point, then the decaying solution integrated
  /// inward from r_match and joined continuously. The returned r_match is the
  /// joining radius.
  RadialSolution integrate(double E, double v) const;

  /// Outward phi'/phi minus the inward (decaying) one at the joining radius.
  /// When the whole grid is oscillatory the inward side is the exterior
  /// log-derivative at r_match. Positive when v under-binds; a zero of the
  /// outward phi gives a signed infinity.
  double mismatch(double E, double v) const;

  /// Couples integrate() and mismatch(): node count and mismatch in one sweep.
  struct Probe {
    int nodes;
    double mismatch;
  };
  Probe probe(double E, double v) const;

  /// Eigen-coupling of the channel's state at E with normalized expectation
  /// values. `guess` warm-starts the bracket. Throws NoBoundState when no
  /// coupling below the cap produces the requested node count.
  SpectralPoint solve(double E, std::optional<double> guess = std::nullopt) const;

  /// The normalized solution at an eigenpair, the grid extended by the
  /// analytic exterior tail.
  RadialSolution normalized_solution(double E, double v) const;

 private:
  struct Sweep {
    int nodes = 0;
    double r_match = 0.0;       // where the outward and inward legs meet
    double phi = 0.0;           // reduced outward value there
    double logderiv_out = 0.0;  // of the reduced function
    double logderiv_in = 0.0;
  };
  Sweep sweep(double E, double v, std::vector<double>* samples) const;
  double exterior_k(double E, double v) const;
  double exterior_logderiv(double E, double v) const;
  bool too_deep(double E, double v) const;

  Shape shape_;
  Channel channel_;
  PhysicalContext ctx_;
  ShootConfig cfg_;
  double r_match_ = 0.0;
  double f0_ = 0.0;
  double floor_ = 0.0;
  std::vector<double> grid_;
  std::vector<double> f_right_;  // f at grid[i], limit from the right
  std::vector<double> f_left_;   // f at grid[i], limit from the left
  std::vector<double> f_mid_;    // f at the midpoint of [grid[i], grid[i+1]]
};

/// Convenience wrappers over a one-shot ShootingProblem.
RadialSolution integrate(double E, double v, const Shape& shape, const Channel& channel,
                         const PhysicalContext& ctx, const ShootConfig& cfg = {});
double mismatch(double E, double v, const Shape& shape, const Channel& channel,
                const PhysicalContext& ctx, const ShootConfig& cfg = {});
SpectralPoint solve_v_shoot(double E, const Shape& shape, const Channel& channel,
                            const PhysicalContext& ctx, const ShootConfig& cfg = {},
                            std::optional<double> guess = std::nullopt);

/// dv/dE = (E - v<f>) / (E<f> - v<f^2>). Throws InvariantViolation when the
/// denominator is not negative.
double slope_vE(const SpectralPoint& point);

}  // namespace kgspec::shooting
