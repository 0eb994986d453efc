#include "kgspec/exactwell.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "kgspec/specfun.hpp"

namespace kgspec::exactwell {

namespace {

using specfun::Order;

int branch_index(const Channel& channel) { return channel.half_line_nodes(); }

// Bisection until the bracket collapses to adjacent doubles. `f` must be
// positive at lo and negative at hi.
template <class F>
double bisect_decreasing(F&& f, double lo, double hi) {
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (f(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Root z = w t of the pure-well condition on the branch of `channel`.
// (z / t) L_int(z) decreases from +inf (or a positive limit at z = 0) to -inf
// across the branch, so the bracket always holds exactly one root.
double branch_root(double k, double t, const Channel& channel) {
  const Order order = Order::for_channel(channel);
  const int j = branch_index(channel);
  const double zl = specfun::interior_zero(order, j);
  const double zr = specfun::interior_zero(order, j + 1);
  const double c = k * specfun::riccati_exterior_logderiv(order, k * t);
  auto f = [&](double z) { return (z / t) * specfun::riccati_interior_logderiv(order, z) - c; };
  return bisect_decreasing(f, zl, zr);
}

// Fraction of the norm inside the well, from the closed-form integrals of
// squared Riccati-Bessel functions expressed through their log-derivatives.
double inner_fraction(const Order& order, double z, double w, double y, double k) {
  const double q = order.q();
  const double li = specfun::riccati_interior_logderiv(order, z);
  const double le = specfun::riccati_exterior_logderiv(order, y);
  const double inside = -(li + z * (q / (z * z) - 1.0 - li * li)) / (2.0 * w);
  const double outside = -(le + y * (q / (y * y) + 1.0 - le * le)) / (2.0 * k);
  return inside / (inside + outside);
}

struct PureSolution {
  double z;
  double v0;
};

PureSolution solve_pure(double E, double t, const PhysicalContext& ctx, const Channel& channel) {
  const double k = asymptotic_k(E, ctx);
  const double z = branch_root(k, t, channel);
  const double w = z / t;
  return {z, std::hypot(w, ctx.m()) - E};
}

SpectralPoint make_point(double E, double v, const Shape::WellGeometry& g, double z, double k_ext,
                         const PhysicalContext& ctx, const Channel& channel) {
  const Order order = Order::for_channel(channel);
  const double w = z / g.halfwidth;
  const double p_in = inner_fraction(order, z, w, k_ext * g.halfwidth, k_ext);
  SpectralPoint p;
  p.E = E;
  p.v = v;
  p.n = channel.n;
  p.f_mean = g.inner * p_in + g.floor * (1.0 - p_in);
  p.f2_mean = g.inner * g.inner * p_in + g.floor * g.floor * (1.0 - p_in);
  const WellSpec spec{g.halfwidth, -v * g.inner, v * g.floor};
  const double res = channel.one_dimensional()
                         ? residual_1d(E, spec, ctx.m(), channel.even_parity() ? Parity::even : Parity::odd)
                         : residual_radial(E, spec, ctx.m(), channel);
  p.match_residual = std::abs(res);
  p.norm_residual = 0.0;
  return p;
}

}  // namespace

double interior_wavenumber(double E, double v0, double m) {
  const double s = (E + v0) * (E + v0) - m * m;
  if (s < 0.0) throw NoBoundState("interior is evanescent: (E + v0)^2 < m^2");
  return std::sqrt(s);
}

double residual_1d(double E, const WellSpec& well, double m, Parity parity) {
  const PhysicalContext ctx(m);
  const double k = asymptotic_k(E - well.floor, ctx);
  const double w = interior_wavenumber(E, well.v0, m);
  const double z = w * well.t;
  if (parity == Parity::even) return w * std::tan(z) - k;
  return w / std::tan(z) + k;
}

double residual_radial(double E, const WellSpec& well, double m, const Channel& channel) {
  const PhysicalContext ctx(m);
  const double k = asymptotic_k(E - well.floor, ctx);
  const double w = interior_wavenumber(E, well.v0, m);
  const Order order = Order::for_channel(channel);
  return w * specfun::riccati_interior_logderiv(order, w * well.t) -
         k * specfun::riccati_exterior_logderiv(order, k * well.t);
}

double pure_depth(double E, double t, const PhysicalContext& ctx, const Channel& channel) {
  if (!(t > 0.0)) throw InvalidInput("well halfwidth must be > 0");
  return solve_pure(E, t, ctx, channel).v0;
}

SpectralPoint solve_v(double E, double t, const PhysicalContext& ctx, const Channel& channel) {
  return solve_v(E, Shape::WellGeometry{t, -1.0, 0.0}, ctx, channel);
}

SpectralPoint solve_v(double E, const Shape::WellGeometry& g, const PhysicalContext& ctx,
                      const Channel& channel) {
  ctx.require_admissible(E);
  if (!(g.halfwidth > 0.0)) throw InvalidInput("well halfwidth must be > 0");
  if (!(g.inner < g.floor) || g.floor > 0.0) {
    throw InvalidInput("well needs inner < floor <= 0");
  }
  const double depth = g.floor - g.inner;
  const double s = -g.floor;
  const double m = ctx.m();

  if (s == 0.0) {
    const PureSolution pure = solve_pure(E, g.halfwidth, ctx, channel);
    return make_point(E, pure.v0 / depth, g, pure.z, asymptotic_k(E, ctx), ctx, channel);
  }

  // h(v) = v depth - v0(E + v s) is negative at v = 0; look for a sign change
  // below the point where the shifted energy reaches m.
  const double v_feasible = (m - E) / s;
  auto h = [&](double v) { return v * depth - solve_pure(E + v * s, g.halfwidth, ctx, channel).v0; };
  const double v_cap = v_feasible * (1.0 - 1e-12);
  double v_hi = std::min(4.0 * m / depth, v_cap);
  while (h(v_hi) < 0.0) {
    if (v_hi >= v_cap) throw NoBoundState("shifted well has no state on this branch at E = " + std::to_string(E));
    v_hi = std::min(2.0 * v_hi, v_cap);
  }
  double lo = 0.0, hi = v_hi;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (h(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double v = 0.5 * (lo + hi);
  const double e_shift = E + v * s;
  const PureSolution pure = solve_pure(e_shift, g.halfwidth, ctx, channel);
  return make_point(E, v, g, pure.z, asymptotic_k(e_shift, ctx), ctx, channel);
}

std::vector<double> solve_E(double v0, double t, const PhysicalContext& ctx, const Channel& channel,
                            int grid_points) {
  if (!(v0 > 0.0)) throw InvalidInput("well depth v0 must be > 0");
  if (grid_points < 3) throw InvalidInput("solve_E needs at least three grid points");
  const double m = ctx.m();
  auto excess = [&](double E) { return pure_depth(E, t, ctx, channel) - v0; };

  std::vector<double> E(static_cast<std::size_t>(grid_points));
  std::vector<double> F(E.size());
  for (std::size_t i = 0; i < E.size(); ++i) {
    E[i] = -m + 2.0 * m * (static_cast<double>(i) + 0.5) / grid_points;
    F[i] = excess(E[i]);
  }

  // The spectral curve is concave, so excess(E) has a single maximum. A
  // maximum touching zero is a tangency and counts once.
  const auto imax = static_cast<std::size_t>(std::max_element(F.begin(), F.end()) - F.begin());
  double a = E[imax > 0 ? imax - 1 : 0];
  double b = E[std::min(imax + 1, E.size() - 1)];
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int i = 0; i < 200 && b - a > 1e-15 * m; ++i) {
    const double c = b - inv_phi * (b - a);
    const double d = a + inv_phi * (b - a);
    if (excess(c) > excess(d)) {
      b = d;
    } else {
      a = c;
    }
  }
  const double e_peak = 0.5 * (a + b);
  const double f_peak = excess(e_peak);
  if (std::abs(f_peak) <= 1e-9 * std::max(1.0, v0)) return {e_peak};
  if (f_peak < 0.0) return {};

  std::vector<double> roots;
  auto refine = [&](double lo, double hi, bool rising) {
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if ((excess(mid) < 0.0) == rising) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    roots.push_back(0.5 * (lo + hi));
  };
  // One root left of the peak, one right of it, each only if the curve dips
  // below v0 before the grid edge.
  // Roots beyond the outermost grid samples, in the last half cell.
  const double edge = m * (1.0 - 1e-12);
  if (F.front() >= 0.0 && excess(-edge) < 0.0) refine(-edge, E.front(), true);
  if (F.front() < 0.0) {
    std::size_t i = 0;
    while (i + 1 < E.size() && E[i + 1] < e_peak && F[i + 1] < 0.0) ++i;
    refine(E[i], std::min(E[i + 1], e_peak), true);
  }
  if (F.back() < 0.0) {
    std::size_t i = E.size() - 1;
    while (i > 0 && E[i - 1] > e_peak && F[i - 1] < 0.0) --i;
    refine(std::max(E[i - 1], e_peak), E[i], false);
  }
  if (F.back() >= 0.0 && excess(edge) < 0.0) refine(E.back(), edge, false);
  return roots;
}

std::vector<ScaledPoint> scaled_ground_curve(double mu, const std::vector<double>& t_grid) {
  if (!(mu > 0.0)) throw InvalidInput("scaled mass mu must be > 0");
  std::vector<ScaledPoint> out;
  for (double t : t_grid) {
    if (!(t > 0.0) || t >= std::numbers::pi / 2.0) continue;
    const double tt = t * std::tan(t);
    if (tt > mu) continue;
    const double e = std::sqrt(mu * mu - tt * tt);
    const double base = std::hypot(t, mu);
    out.push_back({t, e, base - e});
    if (e > 0.0) out.push_back({t, -e, base + e});
  }
  return out;
}

double scaled_curve_zero(double mu) {
  if (!(mu > 0.0)) throw InvalidInput("scaled mass mu must be > 0");
  auto f = [mu](double t) { return mu - t * std::tan(t); };
  return bisect_decreasing(f, 0.0, std::numbers::pi / 2.0);
}

}  // namespace kgspec::exactwell
