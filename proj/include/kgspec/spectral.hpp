#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "kgspec/kernel.hpp"
#include "kgspec/potentials.hpp"
#include "kgspec/shooting.hpp"

namespace kgspec::spectral {

enum class Solver { exact, shoot };

Solver parse_solver(const std::string& name);
std::string to_string(Solver solver);

struct TraceOptions {
  Solver solver = Solver::shoot;
  shooting::ShootConfig shoot;
  /// Seed each solve from the neighbouring points. Forces sequential tracing.
  bool warm_start = true;
  /// Worker threads for cold-started tracing.
  int threads = 1;
};

/// v = G(E) on `E_grid` (strictly increasing, inside (-m, m)). Energies
/// where the state does not exist are recorded in `gaps`.
SpectralCurve trace_curve(const Shape& shape, const Channel& channel, const std::vector<double>& E_grid,
                          const PhysicalContext& ctx, const TraceOptions& options = {});

/// `points` uniform energies on [-m + offset, m - offset].
std::vector<double> default_energy_grid(const PhysicalContext& ctx, int points = 200, double offset = 1e-3);

/// `points` uniform values on [a, b]; a single point yields {a}.
std::vector<double> uniform_grid(double a, double b, int points);

struct ConcavityReport {
  double max_second_difference = 0.0;  ///< largest second divided difference
  double tolerance = 0.0;
  bool concave = true;
  int sign_changes = 0;  ///< of the first differences
  bool unimodal = true;
  std::size_t peak_index = 0;
  bool interior_peak = false;
  double E_cr = 0.0;
  double v_cr = 0.0;
  double critical_residual = 0.0;   ///< |E_cr - v_cr <f>_cr|
  double critical_tolerance = 0.0;  ///< variation of E - v<f> over the adjacent cells
  bool critical_ok = true;
  std::vector<double> violations;  ///< energies with excess curvature

  bool ok() const { return concave && unimodal && critical_ok; }
};

/// Throws InvalidInput for fewer than three points.
ConcavityReport concavity_report(const SpectralCurve& curve, double rel_tol = kConcavityRelTol);

struct MonotonicityReport {
  std::size_t pairs_checked = 0;
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// Where E >= v<f> at both ends of a grid cell, v must not increase across
/// it; where E < v<f> at both ends, v must not decrease.
MonotonicityReport monotonicity_check(const SpectralCurve& curve);

struct ComparisonReport {
  std::size_t common_points = 0;
  double max_violation = 0.0;  ///< max of G1 - G2 over common energies (<= 0 when ordered)
  double tolerance = 0.0;
  std::vector<double> violating_E;
  bool ok() const { return violating_E.empty(); }
};

/// G1(E) <= G2(E) + tol at every energy present in both curves.
ComparisonReport compare_curves(const SpectralCurve& lower, const SpectralCurve& upper, double tol = 1e-8);

/// Validates lower <= upper pointwise (InvalidInput otherwise), traces both
/// shapes on the grid and compares the curves.
ComparisonReport compare_shapes(const Shape& lower, const Shape& upper, const Channel& channel,
                                const std::vector<double>& E_grid, const PhysicalContext& ctx,
                                const TraceOptions& options = {}, double tol = 1e-8);

}  // namespace kgspec::spectral
