// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "kgspec/bounds.hpp"
#include "kgspec/exactwell.hpp"
#include "kgspec/potentials.hpp"
#include "kgspec/shooting.hpp"
#include "kgspec/spectral.hpp"

using namespace kgspec;

namespace {

const PhysicalContext kCtx(1.0);
constexpr double kPaperE = -0.512574196;

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

// Curves shared by the slope and concavity criteria.
struct Traced {
  std::string label;
  Shape shape;
  spectral::TraceOptions options;
  SpectralCurve curve;
};
struct Curves {
  std::vector<Traced> all;
};

const Curves& traced_curves() {
  static const Curves curves = [] {
    Curves c;
    const auto grid = spectral::default_energy_grid(kCtx, 200);
    spectral::TraceOptions exact;
    exact.solver = spectral::Solver::exact;
    const Shape sw = Shape::square_well(1.0);
    for (int n : {0, 1}) {
      c.all.push_back({"square-well n=" + std::to_string(n), sw, exact,
                       spectral::trace_curve(sw, Channel::make(1, 0, n), grid, kCtx, exact)});
    }
    const Shape ws = Shape::woods_saxon_steepness(20.0 / 7.0);
    for (int n : {0, 1, 2}) {
      c.all.push_back({"woods-saxon b=20/7 n=" + std::to_string(n), ws, {},
                       spectral::trace_curve(ws, Channel::make(1, 0, n), grid, kCtx)});
    }
    return c;
  }();
  return curves;
}

Outcome scaled_curve_zero() {
  const double t0 = exactwell::scaled_curve_zero(1.0);
  const double err = std::abs(t0 - 0.860334);
  return {err <= 1e-5, fmt("t0=%.10f |t0-0.860334|=%.2e", t0, err)};
}

Outcome woods_saxon_regression() {
  const Channel ground = Channel::make(1, 0, 0);
  const double v_u = exactwell::solve_v(kPaperE, Shape::WellGeometry{0.9675, -0.9984, 0.0}, kCtx, ground).v;
  const double v_l = exactwell::solve_v(kPaperE, Shape::WellGeometry{1.03, -1.001, -0.0025}, kCtx, ground).v;
  const double v = shooting::solve_v_shoot(kPaperE, Shape::woods_saxon(0.005), ground, kCtx).v;
  const bool ok = std::abs(v_u - 1.81478) <= 2e-3 && std::abs(v_l - 1.79017) <= 2e-3 &&
                  std::abs(v - 1.80494) <= 2e-3 && v_l <= v && v <= v_u;
  return {ok, fmt("v_l=%.8f v=%.8f v_u=%.8f", v_l, v, v_u)};
}

Outcome oracle_equivalence() {
  std::mt19937_64 rng(314159);
  std::uniform_real_distribution<double> energy(-0.95, 0.95), width(0.5, 2.0);
  double worst = 0.0;
  std::string where;
  int solves = 0;
  for (int d : {1, 2, 3, 5}) {
    for (int n : {0, 1, 2}) {
      const Channel ch = Channel::make(d, 0, n);
      for (int i = 0; i < 20; ++i) {
        const double E = energy(rng), t = width(rng);
        const double exact = exactwell::solve_v(E, t, kCtx, ch).v;
        const double shoot = shooting::solve_v_shoot(E, Shape::square_well(t), ch, kCtx).v;
        const double rel = std::abs(shoot - exact) / exact;
        ++solves;
        if (rel > worst) {
          worst = rel;
          where = fmt("%s E=%.4f t=%.4f", ch.label().c_str(), E, t);
        }
      }
    }
  }
  return {worst <= 1e-6, fmt("%d pairs, max relative delta %.2e at %s", solves, worst, where.c_str())};
}

Outcome dimensional_reduction() {
  double worst = 0.0;
  int points = 0, identical = 0;
  for (int i = 0; i < 40; ++i) {
    const double E = -0.95 + 1.9 * i / 39.0;
    for (int j = 0; j < 25; ++j) {
      const double v0 = (1.0 - E) + 0.02 + 5.0 * j / 24.0;
      const exactwell::WellSpec well{1.0, v0, 0.0};
      const double w = exactwell::interior_wavenumber(E, v0, 1.0);
      const double k = std::sqrt(1.0 - E * E);
      const double ref = w / std::tan(w) + k;
      const double got = exactwell::residual_radial(E, well, 1.0, Channel::make(3, 0, 0));
      worst = std::max(worst, std::abs(got - ref) / std::max(1.0, std::abs(ref)));
      identical += exactwell::residual_radial(E, well, 1.0, Channel::make(5, 0, 0)) ==
                   exactwell::residual_radial(E, well, 1.0, Channel::make(3, 1, 0));
      ++points;
    }
  }
  return {worst <= 1e-10 && identical == points,
          fmt("%d grid points, max |delta|/max(1,|ref|) = %.2e, d5l0==d3l1 at %d/%d", points, worst, identical,
              points)};
}

Outcome slope_formula() {
  const auto& curves = traced_curves().all;
  Outcome out;
  std::ostringstream detail;
  // The central differences re-trace the curve at E +- h. The 200-point grid
  // itself is too coarse: its O(h^2) error near the square-well peak is ~4e-3.
  const double h = 1e-4;
  for (std::size_t c : {std::size_t{0}, std::size_t{2}}) {
    const auto& t = curves[c];
    const auto& p = t.curve.points;
    double worst = 0.0;
    int positive = 0;
    for (const auto& q : p) positive += q.slope_denominator() >= 0.0;
    for (int k = 0; k < 10; ++k) {
      const std::size_t i = 10 + static_cast<std::size_t>(k) * (p.size() - 21) / 9;
      const auto local = spectral::trace_curve(t.shape, t.curve.channel, {p[i].E - h, p[i].E + h}, kCtx, t.options);
      const double fd = (local.points[1].v - local.points[0].v) / (2.0 * h);
      const double analytic = shooting::slope_vE(p[i]);
      worst = std::max(worst, std::abs(analytic - fd) / std::abs(fd));
    }
    out.pass = out.pass && worst <= 1e-3 && positive == 0 && p.size() == 200;
    detail << t.label << ": max rel " << fmt("%.2e", worst) << ", non-negative denominators " << positive << "; ";
  }
  out.detail = detail.str();
  return out;
}

Outcome concavity() {
  Outcome out;
  std::ostringstream detail;
  for (const auto& t : traced_curves().all) {
    const auto rep = spectral::concavity_report(t.curve);
    out.pass = out.pass && rep.ok() && t.curve.points.size() == 200;
    detail << t.label << (rep.ok() ? " ok" : " FAIL") << fmt(" (d2max=%.1e, changes=%d)", rep.max_second_difference,
                                                           rep.sign_changes)
           << "; ";
  }
  out.detail = detail.str();
  return out;
}

Outcome comparison_theorem() {
  std::mt19937_64 rng(271828);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto grid = spectral::default_energy_grid(kCtx, 40);
  Outcome out;
  std::ostringstream detail;
  std::size_t compared = 0;
  for (int i = 0; i < 10; ++i) {
    const int family = i % 3;
    // Every family meets every dimension, d = 2 (l = 0) included.
    const int d = 1 + (i + i / 3) % 3;
    spectral::TraceOptions opt;
    std::string label;
    std::optional<Shape> lower, upper;
    if (family == 0) {
      const double t = 0.8 + 0.7 * u(rng), depth = 0.8 + 0.7 * u(rng);
      const double t2 = t * (0.5 + 0.5 * u(rng)), depth2 = depth * (0.5 + 0.5 * u(rng));
      opt.solver = spectral::Solver::exact;
      label = "nested wells";
      lower = Shape::square_well(t, depth);
      upper = Shape::square_well(t2, depth2);
    } else if (family == 1) {
      const double q = 0.01 + 0.09 * u(rng), R = 0.8 + 0.7 * u(rng), depth = 0.8 + 0.4 * u(rng);
      const double R2 = R * (0.6 + 0.4 * u(rng)), depth2 = depth * (0.7 + 0.3 * u(rng));
      label = "scaled woods-saxon";
      lower = Shape::woods_saxon(q, R, depth);
      upper = Shape::woods_saxon(q, R2, depth2);
    } else {
      const double q = 0.01 + 0.09 * u(rng), R = 0.8 + 0.7 * u(rng), R2 = R * (0.6 + 0.3 * u(rng));
      const double a1 = 0.5 * u(rng), a2 = a1 + 0.1 + 0.4 * u(rng);
      label = "blends";
      const Shape lo = Shape::woods_saxon(q, R), hi = Shape::woods_saxon(q, R2);
      lower = Shape::blend(lo, hi, a1);
      upper = Shape::blend(lo, hi, a2);
    }
    const Channel ch = Channel::make(d, 0, 0);
    const auto rep = spectral::compare_shapes(*lower, *upper, ch, grid, kCtx, opt);
    compared += rep.common_points;
    if (!rep.ok()) {
      out.pass = false;
      detail << label << " d=" << d << " " << lower->descriptor() << " <= " << upper->descriptor()
             << fmt(" violated by %.2e at %zu energies (first E=%.6f); ", rep.max_violation, rep.violating_E.size(),
                    rep.violating_E.front());
    }
  }
  detail << compared << " common energies over 10 pairs";
  out.detail = detail.str();
  return out;
}

Outcome shift_lemma() {
  std::mt19937_64 rng(1618);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    Shape base = Shape::square_well(0.6 + u(rng));
    if (i % 3 == 1) base = Shape::woods_saxon(0.01 + 0.1 * u(rng), 0.7 + 0.6 * u(rng));
    if (i % 3 == 2) base = Shape::exponential(0.3 + 0.7 * u(rng));
    const Channel ch = Channel::make(1 + i % 3, 0, i % 2);
    const double E = -0.6 + 1.2 * u(rng);
    const double v = shooting::solve_v_shoot(E, base, ch, kCtx).v;
    const double s = (E + 1.0) / v * (0.1 + 0.8 * u(rng));
    const double E1 = shift_energy(E, v, s, kCtx);
    worst = std::max(worst, std::abs(shooting::mismatch(E1, v, Shape::shifted(base, s), ch, kCtx)));
  }
  return {worst < 1e-6, fmt("10 cases, max |mismatch| = %.2e", worst)};
}

Outcome sandwich() {
  const Shape ws = Shape::woods_saxon(0.005);
  const Channel ground = Channel::make(1, 0, 0);
  const auto grid = spectral::default_energy_grid(kCtx, 20);
  const auto rows = bounds::bounds_curve(ws, ground, grid, kCtx);
  Outcome out;
  std::ostringstream detail;
  int bad = 0;
  for (const auto& r : rows) {
    if (!r.point || !r.sandwiched()) {
      ++bad;
      detail << fmt("E=%.4f: ", r.E);
      if (r.v_lower) detail << fmt("G_L=%.6f ", *r.v_lower);
      if (r.point) detail << fmt("v=%.6f ", r.point->v);
      if (r.v_upper) detail << fmt("G_U=%.6f", *r.v_upper);
      detail << "; ";
    }
  }
  const auto ob = bounds::optimize_bounds(kPaperE, ws, ground, kCtx);
  const double gap = ob.G_L && ob.G_U ? *ob.G_U - *ob.G_L : INFINITY;
  out.pass = bad == 0 && gap <= 0.02461 + 1e-3;
  out.detail = fmt("%d/%zu energies violate G_L <= v <= G_U; ", bad, rows.size()) + detail.str() +
               fmt("optimized gap at E=%.9f is %.6f", kPaperE, gap);
  return out;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_s;  // zero when no runtime limit applies
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "scaled-curve zero", 1.0, scaled_curve_zero},
      {2, "woods-saxon regression", 30.0, woods_saxon_regression},
      {3, "oracle equivalence", 300.0, oracle_equivalence},
      {4, "dimensional reduction", 0.0, dimensional_reduction},
      {5, "slope formula", 0.0, slope_formula},
      {6, "concavity and unimodality", 0.0, concavity},
      {7, "comparison theorem", 0.0, comparison_theorem},
      {8, "shift lemma", 0.0, shift_lemma},
      {9, "sandwich optimality", 0.0, sandwich},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_s > 0.0 && secs >= c.budget_s) {
      o.pass = false;
      o.detail += fmt(" (over the %.0f s budget)", c.budget_s);
    }
    failed += !o.pass;
    std::printf("%s %d %s: %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
