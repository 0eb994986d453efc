#pragma once

#include <vector>

#include "kgspec/kernel.hpp"
#include "kgspec/potentials.hpp"

namespace kgspec::exactwell {

/// Potential -v0 for r <= t and `floor` beyond (-v0 <= floor <= 0).
struct WellSpec {
  double t = 1.0;
  double v0 = 1.0;
  double floor = 0.0;
};

enum class Parity { even, odd };

/// sqrt((E + v0)^2 - m^2). Throws NoBoundState when the interior is evanescent.
double interior_wavenumber(double E, double v0, double m);

/// w tan(wt) - k (even) or w cot(wt) + k (odd), k the exterior decay rate.
double residual_1d(double E, const WellSpec& well, double m, Parity parity);

/// w L_int(wt) - k L_ext(kt) with the Riccati-Bessel order of the channel.
double residual_radial(double E, const WellSpec& well, double m, const Channel& channel);

/// Coupling v of the state `channel` in the well v g, g the unit-shape well
/// `geometry`, at energy E. Wells with a negative floor are solved through
/// the energy shift: v is the fixed point of v (floor - inner) = v0(E + v s),
/// s = -floor, where v0(E') is the pure-well depth.
SpectralPoint solve_v(double E, const Shape::WellGeometry& geometry, const PhysicalContext& ctx,
                      const Channel& channel);

/// Unit-depth pure well of halfwidth t.
SpectralPoint solve_v(double E, double t, const PhysicalContext& ctx, const Channel& channel);

/// Depth v0 of the pure well of halfwidth t whose state `channel` sits at E.
double pure_depth(double E, double t, const PhysicalContext& ctx, const Channel& channel);

/// Every energy in (-m, m) at which the pure well of depth v0 carries the
/// state; two roots below the maximum of the spectral curve, one at tangency.
std::vector<double> solve_E(double v0, double t, const PhysicalContext& ctx,
                            const Channel& channel, int grid_points = 1000);

/// Ground state of the one-dimensional unit well in scaled variables
/// (e = E b, u = v b, mu = m b, t = w b for halfwidth b).
struct ScaledPoint {
  double t;
  double e;
  double u;
};

/// e(t) = +-sqrt(mu^2 - (t tan t)^2), u(t) = sqrt(t^2 + mu^2) - e(t), for
/// admissible t in (0, pi/2). Both signs are emitted; inadmissible t are skipped.
std::vector<ScaledPoint> scaled_ground_curve(double mu, const std::vector<double>& t_grid);

/// The t in (0, pi/2) with t tan t = mu, where e(t) = 0.
double scaled_curve_zero(double mu);

}  // namespace kgspec::exactwell
