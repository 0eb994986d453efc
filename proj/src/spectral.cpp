#include "kgspec/spectral.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <thread>

#include "kgspec/exactwell.hpp"

namespace kgspec::spectral {

Solver parse_solver(const std::string& name) {
  if (name == "exact") return Solver::exact;
  if (name == "shoot") return Solver::shoot;
  throw InvalidInput("unknown solver '" + name + "' (expected exact or shoot)");
}

std::string to_string(Solver solver) { return solver == Solver::exact ? "exact" : "shoot"; }

std::vector<double> uniform_grid(double a, double b, int points) {
  if (points < 1) throw InvalidInput("grid needs at least one point");
  if (points == 1) return {a};
  if (!(b > a)) throw InvalidInput("grid needs E_max > E_min");
  std::vector<double> out(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) out[static_cast<std::size_t>(i)] = a + (b - a) * i / (points - 1);
  out.back() = b;
  return out;
}

std::vector<double> default_energy_grid(const PhysicalContext& ctx, int points, double offset) {
  if (!(offset > 0.0) || offset >= ctx.m()) throw InvalidInput("grid offset must lie in (0, m)");
  return uniform_grid(-ctx.m() + offset, ctx.m() - offset, points);
}

SpectralCurve trace_curve(const Shape& shape, const Channel& channel, const std::vector<double>& E_grid,
                          const PhysicalContext& ctx, const TraceOptions& options) {
  for (std::size_t i = 0; i < E_grid.size(); ++i) {
    ctx.require_admissible(E_grid[i]);
    if (i > 0 && !(E_grid[i] > E_grid[i - 1])) throw InvalidInput("energy grid must be strictly increasing");
  }
  SpectralCurve curve;
  curve.channel = channel;
  curve.shape_id = shape.descriptor();

  std::optional<shooting::ShootingProblem> problem;
  std::optional<Shape::WellGeometry> well;
  if (options.solver == Solver::exact) {
    well = shape.as_square_well();
    if (!well) throw InvalidInput("the exact solver needs a square-well shape, got " + curve.shape_id);
  } else {
    problem.emplace(shape, channel, ctx, options.shoot);
  }
  auto solve_one = [&](double E, std::optional<double> guess) {
    if (well) return exactwell::solve_v(E, *well, ctx, channel);
    return problem->solve(E, guess);
  };

  std::vector<std::optional<SpectralPoint>> solved(E_grid.size());
  if (options.warm_start || options.threads <= 1 || well) {
    for (std::size_t i = 0; i < E_grid.size(); ++i) {
      std::optional<double> guess;
      if (options.warm_start && i > 0 && solved[i - 1]) {
        guess = solved[i - 1]->v;
        if (i > 1 && solved[i - 2]) {
          const double slope = (solved[i - 1]->v - solved[i - 2]->v) / (E_grid[i - 1] - E_grid[i - 2]);
          guess = *guess + slope * (E_grid[i] - E_grid[i - 1]);
        }
      }
      try {
        solved[i] = solve_one(E_grid[i], guess);
      } catch (const NoBoundState&) {
      }
    }
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t i = next++; i < E_grid.size(); i = next++) {
        try {
          solved[i] = solve_one(E_grid[i], std::nullopt);
        } catch (const NoBoundState&) {
        }
      }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < options.threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  for (std::size_t i = 0; i < E_grid.size(); ++i) {
    if (solved[i]) {
      curve.points.push_back(*solved[i]);
    } else {
      curve.gaps.push_back(E_grid[i]);
    }
  }
  return curve;
}

ConcavityReport concavity_report(const SpectralCurve& curve, double rel_tol) {
  const auto& p = curve.points;
  if (p.size() < 3) throw InvalidInput("concavity needs at least three points");
  curve.check_ordered();
  ConcavityReport r;
  const double vmax = curve.max_v();
  r.tolerance = rel_tol * vmax;
  r.max_second_difference = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i + 1 < p.size(); ++i) {
    const double left = (p[i].v - p[i - 1].v) / (p[i].E - p[i - 1].E);
    const double right = (p[i + 1].v - p[i].v) / (p[i + 1].E - p[i].E);
    const double dd2 = 2.0 * (right - left) / (p[i + 1].E - p[i - 1].E);
    r.max_second_difference = std::max(r.max_second_difference, dd2);
    if (dd2 > r.tolerance) r.violations.push_back(p[i].E);
  }
  r.concave = r.violations.empty();

  // First differences below rounding level carry no sign.
  const double flat = 1e-12 * vmax;
  int last = 0;
  for (std::size_t i = 1; i < p.size(); ++i) {
    const double dv = p[i].v - p[i - 1].v;
    if (std::abs(dv) <= flat) continue;
    const int sign = dv > 0.0 ? 1 : -1;
    if (last != 0 && sign != last) ++r.sign_changes;
    last = sign;
  }
  r.unimodal = r.sign_changes <= 1;

  const auto it = std::max_element(p.begin(), p.end(), [](const auto& a, const auto& b) { return a.v < b.v; });
  r.peak_index = static_cast<std::size_t>(it - p.begin());
  r.E_cr = it->E;
  r.v_cr = it->v;
  auto s = [&](std::size_t i) { return p[i].E - p[i].v * p[i].f_mean; };
  r.critical_residual = std::abs(s(r.peak_index));
  r.interior_peak = r.peak_index > 0 && r.peak_index + 1 < p.size();
  if (r.interior_peak) {
    const double here = s(r.peak_index);
    r.critical_tolerance = std::max(std::abs(s(r.peak_index - 1) - here), std::abs(s(r.peak_index + 1) - here));
    r.critical_ok = r.critical_residual <= r.critical_tolerance;
  } else {
    // A peak on the grid edge. Either the curve keeps falling away from it,
    // and E - v<f> already has the matching sign, or the true maximum lies
    // inside the edge cell and E - v<f> changes sign across that cell.
    const std::size_t nb = r.peak_index == 0 ? 1 : r.peak_index - 1;
    const double edge = s(r.peak_index);
    r.critical_tolerance = std::abs(s(nb) - edge);
    const bool falling_away = r.peak_index == 0 ? edge >= 0.0 : edge <= 0.0;
    r.critical_ok = falling_away || r.critical_residual <= r.critical_tolerance;
  }
  return r;
}

MonotonicityReport monotonicity_check(const SpectralCurve& curve) {
  curve.check_ordered();
  MonotonicityReport r;
  const auto& p = curve.points;
  const double noise = 1e-10 * curve.max_v();
  for (std::size_t i = 1; i < p.size(); ++i) {
    const double s0 = p[i - 1].E - p[i - 1].v * p[i - 1].f_mean;
    const double s1 = p[i].E - p[i].v * p[i].f_mean;
    const double dv = p[i].v - p[i - 1].v;
    std::ostringstream os;
    os.precision(12);
    if (s0 >= 0.0 && s1 >= 0.0) {
      ++r.pairs_checked;
      if (dv > noise) {
        os << "v rises by " << dv << " on [" << p[i - 1].E << ", " << p[i].E << "] where E >= v<f>";
        r.violations.push_back(os.str());
      }
    } else if (s0 < 0.0 && s1 < 0.0) {
      ++r.pairs_checked;
      if (dv < -noise) {
        os << "v falls by " << -dv << " on [" << p[i - 1].E << ", " << p[i].E << "] where E < v<f>";
        r.violations.push_back(os.str());
      }
    }
  }
  return r;
}

ComparisonReport compare_curves(const SpectralCurve& lower, const SpectralCurve& upper, double tol) {
  if (!(lower.channel == upper.channel)) throw InvalidInput("compared curves must share the channel");
  ComparisonReport r;
  r.tolerance = tol;
  r.max_violation = -std::numeric_limits<double>::infinity();
  std::size_t j = 0;
  for (const auto& a : lower.points) {
    while (j < upper.points.size() && upper.points[j].E < a.E) ++j;
    if (j == upper.points.size()) break;
    if (upper.points[j].E != a.E) continue;
    ++r.common_points;
    const double excess = a.v - upper.points[j].v;
    r.max_violation = std::max(r.max_violation, excess);
    if (excess > tol) r.violating_E.push_back(a.E);
  }
  if (r.common_points == 0) r.max_violation = 0.0;
  return r;
}

ComparisonReport compare_shapes(const Shape& lower, const Shape& upper, const Channel& channel,
                                const std::vector<double>& E_grid, const PhysicalContext& ctx,
                                const TraceOptions& options, double tol) {
  if (!pointwise_ordered(lower, upper)) {
    throw InvalidInput("shapes are not pointwise ordered: " + lower.descriptor() + " vs " + upper.descriptor());
  }
  return compare_curves(trace_curve(lower, channel, E_grid, ctx, options),
                        trace_curve(upper, channel, E_grid, ctx, options), tol);
}

}  // namespace kgspec::spectral
