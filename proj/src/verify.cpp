#include "kgspec/verify.hpp"

#include <cmath>
#include <random>

#include "kgspec/exactwell.hpp"
#include "kgspec/io.hpp"
#include "kgspec/potentials.hpp"
#include "kgspec/shooting.hpp"
#include "kgspec/spectral.hpp"

namespace kgspec::verify {

namespace {

using nlohmann::json;

struct NamedCurve {
  std::string label;
  SpectralCurve curve;
};

// Square-well ground and first excited states (exact), Woods-Saxon b = 20/7
// with three states (shooting).
std::vector<NamedCurve> builtin_curves(const PhysicalContext& ctx, int threads) {
  const auto grid = spectral::default_energy_grid(ctx, 200);
  std::vector<NamedCurve> out;
  spectral::TraceOptions exact;
  exact.solver = spectral::Solver::exact;
  for (int n : {0, 1}) {
    out.push_back({"square-well n=" + std::to_string(n),
                   spectral::trace_curve(Shape::square_well(1.0), Channel::make(1, 0, n), grid, ctx, exact)});
  }
  spectral::TraceOptions shoot;
  shoot.threads = threads;
  const Shape ws = Shape::woods_saxon_steepness(20.0 / 7.0);
  for (int n : {0, 1, 2}) {
    out.push_back({"woods-saxon b=20/7 n=" + std::to_string(n),
                   spectral::trace_curve(ws, Channel::make(1, 0, n), grid, ctx, shoot)});
  }
  return out;
}

SuiteResult concavity(const PhysicalContext& ctx, int threads) {
  SuiteResult r{"concavity", true, json::array()};
  for (const auto& c : builtin_curves(ctx, threads)) {
    const auto rep = spectral::concavity_report(c.curve);
    r.ok = r.ok && rep.ok();
    r.report.push_back({{"curve", c.label},
                        {"max_second_difference", rep.max_second_difference},
                        {"tolerance", rep.tolerance},
                        {"sign_changes", rep.sign_changes},
                        {"E_cr", rep.E_cr},
                        {"critical_residual", rep.critical_residual},
                        {"critical_tolerance", rep.critical_tolerance},
                        {"ok", rep.ok()}});
  }
  return r;
}

SuiteResult monotonicity(const PhysicalContext& ctx, int threads) {
  SuiteResult r{"monotonicity", true, json::array()};
  for (const auto& c : builtin_curves(ctx, threads)) {
    const auto rep = spectral::monotonicity_check(c.curve);
    r.ok = r.ok && rep.ok();
    r.report.push_back({{"curve", c.label}, {"pairs_checked", rep.pairs_checked}, {"violations", rep.violations}});
  }
  return r;
}

SuiteResult inequality(const PhysicalContext& ctx, int threads) {
  SuiteResult r{"inequality", true, json::array()};
  for (const auto& c : builtin_curves(ctx, threads)) {
    std::size_t bad = 0;
    for (const auto& p : c.curve.points) bad += p.satisfies_moment_inequality() ? 0 : 1;
    r.ok = r.ok && bad == 0;
    r.report.push_back({{"curve", c.label}, {"points", c.curve.points.size()}, {"violations", bad}});
  }
  return r;
}

SuiteResult comparison(const PhysicalContext& ctx, int threads) {
  SuiteResult r{"comparison", true, json::array()};
  const auto grid = spectral::default_energy_grid(ctx, 50);
  struct Pair {
    std::string label;
    Shape lower, upper;
    spectral::Solver solver;
  };
  const Shape ws = Shape::woods_saxon(0.05, 1.0);
  const Shape ws_inner = Shape::woods_saxon(0.05, 0.7);
  const std::vector<Pair> pairs = {
      {"square wells depth 1 vs 0.9", Shape::square_well(1.0), Shape::square_well(1.0, 0.9), spectral::Solver::exact},
      {"nested square wells t=1 vs t=0.8", Shape::square_well(1.0), Shape::square_well(0.8), spectral::Solver::exact},
      {"woods-saxon R=1 vs R=0.7", ws, ws_inner, spectral::Solver::shoot},
      {"blends a=0.2 vs a=0.6", Shape::blend(ws, ws_inner, 0.2), Shape::blend(ws, ws_inner, 0.6),
       spectral::Solver::shoot},
  };
  for (const auto& pair : pairs) {
    for (int d : {1, 2, 3}) {
      spectral::TraceOptions opt;
      opt.solver = pair.solver;
      opt.threads = threads;
      const auto rep = spectral::compare_shapes(pair.lower, pair.upper, Channel::make(d, 0, 0), grid, ctx, opt);
      r.ok = r.ok && rep.ok();
      r.report.push_back({{"pair", pair.label},
                          {"d", d},
                          {"common_points", rep.common_points},
                          {"max_violation", rep.max_violation},
                          {"violating_E", rep.violating_E}});
    }
  }
  return r;
}

SuiteResult oracle(const PhysicalContext& ctx, int) {
  SuiteResult r{"oracle", true, json::array()};
  double worst = 0.0;
  for (int d : {1, 2, 3, 5}) {
    for (int n : {0, 1, 2}) {
      const Channel ch = Channel::make(d, 0, n);
      for (double t : {0.7, 1.5}) {
        const shooting::ShootingProblem problem(Shape::square_well(t), ch, ctx);
        for (double E : {-0.8, -0.3, 0.2, 0.7}) {
          const double v_exact = exactwell::solve_v(E * ctx.m(), t, ctx, ch).v;
          const double v_shoot = problem.solve(E * ctx.m()).v;
          const double rel = std::abs(v_shoot - v_exact) / v_exact;
          worst = std::max(worst, rel);
          if (rel > 1e-6) {
            r.ok = false;
            r.report.push_back({{"channel", ch.label()}, {"t", t}, {"E", E}, {"relative_delta", rel}});
          }
        }
      }
    }
  }
  r.report = json{{"worst_relative_delta", worst}, {"failures", r.report}};
  return r;
}

SuiteResult shift(const PhysicalContext& ctx, int) {
  SuiteResult r{"shift", true, json::array()};
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::vector<Shape> bases = {Shape::square_well(1.0), Shape::woods_saxon(0.05), Shape::exponential(0.5)};
  const Channel ch = Channel::make(1, 0, 0);
  for (int i = 0; i < 10; ++i) {
    const Shape& base = bases[static_cast<std::size_t>(i) % bases.size()];
    const double E = ctx.m() * (-0.6 + 1.2 * unit(rng));
    const SpectralPoint p = shooting::solve_v_shoot(E, base, ch, ctx);
    // Keep |E1 + v s| = |E| < m with the shifted energy inside (-m, m) too.
    const double s = (E + ctx.m()) / p.v * (0.1 + 0.8 * unit(rng));
    const double E1 = shift_energy(E, p.v, s, ctx);
    const double mis = shooting::mismatch(E1, p.v, Shape::shifted(base, s), ch, ctx);
    const bool good = std::abs(mis) < 1e-6;
    r.ok = r.ok && good;
    r.report.push_back({{"shape", base.descriptor()}, {"E", E}, {"v", p.v}, {"s", s}, {"E1", E1}, {"mismatch", mis}});
  }
  return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"concavity", "monotonicity", "comparison",
                                                 "oracle",    "inequality",   "shift"};
  return names;
}

SuiteResult run_suite(const std::string& name, const PhysicalContext& ctx, int threads) {
  if (name == "concavity") return concavity(ctx, threads);
  if (name == "monotonicity") return monotonicity(ctx, threads);
  if (name == "comparison") return comparison(ctx, threads);
  if (name == "oracle") return oracle(ctx, threads);
  if (name == "inequality") return inequality(ctx, threads);
  if (name == "shift") return shift(ctx, threads);
  throw InvalidInput("unknown suite '" + name + "'");
}

}  // namespace kgspec::verify
