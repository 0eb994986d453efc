#include "kgspec/bounds.hpp"

#include <cmath>
#include <functional>
#include <limits>

#include "kgspec/exactwell.hpp"

namespace kgspec::bounds {

namespace {

constexpr double kSandwichTol = 1e-9;

struct SideResult {
  std::optional<double> best;
  double t = 0.0;
  int evaluations = 0;
};

// Maximizes `score` over (0, support]. Infeasible contact points score -inf.
SideResult optimize_side(const std::function<std::optional<double>(double)>& value, bool maximize,
                         double support, const OptimizeOptions& options) {
  SideResult out;
  const double minus_inf = -std::numeric_limits<double>::infinity();
  auto score = [&](double t) {
    ++out.evaluations;
    const auto v = value(t);
    if (!v) return minus_inf;
    const double s = maximize ? *v : -*v;
    if (!out.best || s > (maximize ? *out.best : -*out.best)) {
      out.best = v;
      out.t = t;
    }
    return s;
  };

  const int n = options.coarse_points;
  std::vector<double> ts(static_cast<std::size_t>(n)), ss(ts.size());
  for (int i = 0; i < n; ++i) {
    ts[static_cast<std::size_t>(i)] = support * (i + 1) / n;
    ss[static_cast<std::size_t>(i)] = score(ts[static_cast<std::size_t>(i)]);
  }
  if (!out.best) return out;

  std::size_t b = 0;
  for (std::size_t i = 1; i < ss.size(); ++i) {
    if (ss[i] > ss[b]) b = i;
  }
  int changes = 0, last = 0;
  for (std::size_t i = 1; i < ss.size(); ++i) {
    if (ss[i] == minus_inf || ss[i - 1] == minus_inf || ss[i] == ss[i - 1]) continue;
    const int sign = ss[i] > ss[i - 1] ? 1 : -1;
    if (last != 0 && sign != last) ++changes;
    last = sign;
  }

  double lo = b == 0 ? 0.5 * ts[0] : ts[b - 1];
  double hi = b + 1 < ts.size() ? ts[b + 1] : ts[b];
  const double dt = options.rel_dt * support;
  if (changes <= 1) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = hi - inv_phi * (hi - lo), d = lo + inv_phi * (hi - lo);
    double sc = score(c), sd = score(d);
    while (hi - lo > dt) {
      if (sc >= sd) {
        hi = d;
        d = c;
        sd = sc;
        c = hi - inv_phi * (hi - lo);
        sc = score(c);
      } else {
        lo = c;
        c = d;
        sc = sd;
        d = lo + inv_phi * (hi - lo);
        sd = score(d);
      }
    }
  } else {
    // Not unimodal: bisect on the sign of a finite-difference slope.
    while (hi - lo > dt) {
      const double mid = 0.5 * (lo + hi);
      const double h = 0.25 * dt;
      const double up = score(std::min(mid + h, support)), down = score(mid - h);
      if (up > down) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    score(0.5 * (lo + hi));
  }
  return out;
}

std::optional<double> try_solve(double E, const Shape::WellGeometry& g, const Channel& channel,
                                const PhysicalContext& ctx, std::string* reason) {
  try {
    return exactwell::solve_v(E, g, ctx, channel).v;
  } catch (const NoBoundState& e) {
    if (reason) *reason = e.what();
  } catch (const InvalidInput& e) {
    if (reason) *reason = e.what();
  }
  return std::nullopt;
}

std::optional<double> envelope_value(double E, const Shape& shape, const Channel& channel,
                                     const PhysicalContext& ctx, double t, bool inner, std::string* reason) {
  try {
    const Shape well = inner ? inner_envelope(shape, t) : outer_envelope(shape, t);
    return try_solve(E, *well.as_square_well(), channel, ctx, reason);
  } catch (const InvalidInput& e) {
    if (reason) *reason = e.what();
  }
  return std::nullopt;
}

BoundsRow make_row(double E, const OptimizedBounds& ob, const shooting::ShootingProblem& problem,
                   std::optional<double> guess) {
  BoundsRow row;
  row.E = E;
  row.v_lower = ob.G_L;
  row.v_upper = ob.G_U;
  row.t1 = ob.t1;
  row.t2 = ob.t2;
  row.rigorous = ob.rigorous;
  try {
    row.point = problem.solve(E, guess);
  } catch (const NoBoundState&) {
  }
  return row;
}

}  // namespace

bool rigorous_energy(double E) { return E >= 0.0; }

BoundPair bound_at(double E, const Shape& shape, const Channel& channel, double t1, double t2,
                   const PhysicalContext& ctx) {
  ctx.require_admissible(E);
  BoundPair out;
  out.t1 = t1;
  out.t2 = t2;
  out.v_lower = envelope_value(E, shape, channel, ctx, t1, true, &out.lower_reason);
  out.v_upper = envelope_value(E, shape, channel, ctx, t2, false, &out.upper_reason);
  return out;
}

BoundPair bound_with_wells(double E, const Shape::WellGeometry& lower, const Shape::WellGeometry& upper,
                           const Channel& channel, const PhysicalContext& ctx) {
  ctx.require_admissible(E);
  BoundPair out;
  out.t1 = lower.halfwidth;
  out.t2 = upper.halfwidth;
  out.v_lower = try_solve(E, lower, channel, ctx, &out.lower_reason);
  out.v_upper = try_solve(E, upper, channel, ctx, &out.upper_reason);
  return out;
}

OptimizedBounds optimize_bounds(double E, const Shape& shape, const Channel& channel, const PhysicalContext& ctx,
                                const OptimizeOptions& options) {
  ctx.require_admissible(E);
  if (options.coarse_points < 3) throw InvalidInput("coarse_points must be >= 3");
  if (!(options.rel_dt > 0.0)) throw InvalidInput("rel_dt must be > 0");
  const double support = shape.support_radius();
  const auto lower = optimize_side(
      [&](double t) { return envelope_value(E, shape, channel, ctx, t, true, nullptr); }, true, support, options);
  const auto upper = optimize_side(
      [&](double t) { return envelope_value(E, shape, channel, ctx, t, false, nullptr); }, false, support, options);
  OptimizedBounds out;
  out.G_L = lower.best;
  out.t1 = lower.t;
  out.G_U = upper.best;
  out.t2 = upper.t;
  out.rigorous = rigorous_energy(E);
  out.evaluations = lower.evaluations + upper.evaluations;
  return out;
}

bool BoundsRow::sandwiched() const {
  if (!point) return true;
  const double v = point->v;
  const double tol = kSandwichTol * v;
  if (v_lower && *v_lower > v + tol) return false;
  if (v_upper && *v_upper < v - tol) return false;
  return true;
}

std::vector<BoundsRow> bounds_curve(const Shape& shape, const Channel& channel, const std::vector<double>& E_grid,
                                    const PhysicalContext& ctx, const OptimizeOptions& options,
                                    const shooting::ShootConfig& shoot) {
  const shooting::ShootingProblem problem(shape, channel, ctx, shoot);
  std::vector<BoundsRow> rows;
  std::optional<double> guess;
  for (double E : E_grid) {
    rows.push_back(make_row(E, optimize_bounds(E, shape, channel, ctx, options), problem, guess));
    guess = rows.back().point ? std::optional<double>(rows.back().point->v) : std::nullopt;
  }
  return rows;
}

std::vector<BoundsRow> bounds_curve_fixed(const Shape& shape, const Channel& channel,
                                          const std::vector<double>& E_grid, const PhysicalContext& ctx,
                                          double t1, double t2, const shooting::ShootConfig& shoot) {
  const shooting::ShootingProblem problem(shape, channel, ctx, shoot);
  std::vector<BoundsRow> rows;
  std::optional<double> guess;
  for (double E : E_grid) {
    const BoundPair pair = bound_at(E, shape, channel, t1, t2, ctx);
    OptimizedBounds ob;
    ob.G_L = pair.v_lower;
    ob.G_U = pair.v_upper;
    ob.t1 = t1;
    ob.t2 = t2;
    ob.rigorous = rigorous_energy(E);
    rows.push_back(make_row(E, ob, problem, guess));
    guess = rows.back().point ? std::optional<double>(rows.back().point->v) : std::nullopt;
  }
  return rows;
}

}  // namespace kgspec::bounds
