#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kgspec/kernel.hpp"
#include "kgspec/potentials.hpp"
#include "kgspec/shooting.hpp"

namespace kgspec::bounds {

/// Couplings of the square wells enclosing a shape at one energy. A side
/// whose well has no state (or is degenerate) is empty and carries a reason.
struct BoundPair {
  std::optional<double> v_lower;  ///< from the inner (deeper) well
  std::optional<double> v_upper;  ///< from the outer (shallower) well
  double t1 = 0.0;
  double t2 = 0.0;
  std::string lower_reason;
  std::string upper_reason;

  bool one_sided() const { return v_lower.has_value() != v_upper.has_value(); }
  /// v_lower <= v_upper whenever both sides exist.
  bool ordered() const { return !v_lower || !v_upper || *v_lower <= *v_upper; }
};

/// The comparison argument behind the bounds is only established for E >= 0
/// (where E - v f >= 0 everywhere); below that the bounds are heuristic.
bool rigorous_energy(double E);

/// Solves the inner envelope at t1 and the outer envelope at t2 exactly.
BoundPair bound_at(double E, const Shape& shape, const Channel& channel, double t1, double t2,
                   const PhysicalContext& ctx);

/// Same, for explicitly given wells (unit-shape values).
BoundPair bound_with_wells(double E, const Shape::WellGeometry& lower, const Shape::WellGeometry& upper,
                           const Channel& channel, const PhysicalContext& ctx);

struct OptimizeOptions {
  int coarse_points = 64;
  double rel_dt = 1e-6;  ///< refinement stops at this fraction of the support radius
};

struct OptimizedBounds {
  std::optional<double> G_L;
  std::optional<double> G_U;
  double t1 = 0.0;
  double t2 = 0.0;
  bool rigorous = false;
  int evaluations = 0;
  bool ordered() const { return !G_L || !G_U || *G_L <= *G_U; }
};

/// max over t1 of the lower bound and min over t2 of the upper bound, each
/// from a coarse scan of (0, support] and a local refinement of the best sample.
OptimizedBounds optimize_bounds(double E, const Shape& shape, const Channel& channel, const PhysicalContext& ctx,
                                const OptimizeOptions& options = {});

struct BoundsRow {
  double E = 0.0;
  std::optional<SpectralPoint> point;  ///< shooting solution on the shape itself
  std::optional<double> v_lower;
  std::optional<double> v_upper;
  double t1 = 0.0;
  double t2 = 0.0;
  bool rigorous = false;
  /// v_lower <= v <= v_upper on the sides that exist.
  bool sandwiched() const;
};

/// One row per grid energy: optimized bounds (or fixed contact points) plus
/// the shooting value of the shape itself.
std::vector<BoundsRow> bounds_curve(const Shape& shape, const Channel& channel, const std::vector<double>& E_grid,
                                    const PhysicalContext& ctx, const OptimizeOptions& options = {},
                                    const shooting::ShootConfig& shoot = {});

/// As bounds_curve with fixed contact points instead of optimization.
std::vector<BoundsRow> bounds_curve_fixed(const Shape& shape, const Channel& channel,
                                          const std::vector<double>& E_grid, const PhysicalContext& ctx,
                                          double t1, double t2, const shooting::ShootConfig& shoot = {});

}  // namespace kgspec::bounds
