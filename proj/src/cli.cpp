#include "kgspec/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "kgspec/bounds.hpp"
#include "kgspec/exactwell.hpp"
#include "kgspec/io.hpp"
#include "kgspec/shooting.hpp"
#include "kgspec/spectral.hpp"
#include "kgspec/verify.hpp"

namespace kgspec::cli {

namespace {

using nlohmann::json;

struct Common {
  std::string shape;
  double m = 1.0;
  int d = 1;
  int l = 0;
  int threads = 1;
};

struct GridArgs {
  std::optional<double> E;
  std::optional<double> E_min;
  std::optional<double> E_max;
  int points = 200;
};

void add_common(CLI::App* app, Common& c, bool shape_required = true) {
  auto* opt = app->add_option("--shape", c.shape, "shape, e.g. woods-saxon:q=0.005 or @table.txt");
  if (shape_required) opt->required();
  app->add_option("--m", c.m, "particle mass");
  app->add_option("--d", c.d, "spatial dimension");
  app->add_option("--l", c.l, "angular momentum");
  app->add_option("--threads", c.threads, "worker threads (default: KGSPEC_THREADS or 1)");
}

void add_grid(CLI::App* app, GridArgs& g) {
  app->add_option("--E", g.E, "single energy instead of a grid");
  app->add_option("--E-min", g.E_min, "first grid energy (default -m + 1e-3)");
  app->add_option("--E-max", g.E_max, "last grid energy (default m - 1e-3)");
  app->add_option("--points", g.points, "grid points");
}

std::vector<double> make_grid(const GridArgs& g, const PhysicalContext& ctx) {
  if (g.E) {
    ctx.require_admissible(*g.E);
    return {*g.E};
  }
  const double a = g.E_min.value_or(-ctx.m() + 1e-3);
  const double b = g.E_max.value_or(ctx.m() - 1e-3);
  ctx.require_admissible(a);
  ctx.require_admissible(b);
  return spectral::uniform_grid(a, b, g.points);
}

Shape load_shape(const std::string& text) {
  Shape shape = io::parse_shape(text);
  const ClassCheck check = shape.check_class();
  if (!check.bounded || !check.non_positive || !check.not_identically_zero || !check.monotone) {
    throw InvalidInput(check.violations.front());
  }
  return shape;
}

json base_config(const std::string& command, const Common& c, const Shape& shape) {
  return {{"command", command}, {"shape", shape.descriptor()}, {"m", c.m}, {"d", c.d}, {"l", c.l}};
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream f(path);
  if (!f) throw InvalidInput("cannot write " + path.string());
  f << text;
}

std::string join_dir(const std::string& dir, const std::string& file) {
  return (std::filesystem::path(dir) / file).string();
}

int cmd_solve(const Common& c, double E, int n, const std::string& solver_name, const std::string& format,
              std::ostream& out) {
  const PhysicalContext ctx(c.m);
  ctx.require_admissible(E);
  const Channel ch = Channel::make(c.d, c.l, n);
  const Shape shape = load_shape(c.shape);
  const auto solver = spectral::parse_solver(solver_name);
  SpectralPoint p;
  if (solver == spectral::Solver::exact) {
    const auto well = shape.as_square_well();
    if (!well) throw InvalidInput("the exact solver needs a square-well shape");
    p = exactwell::solve_v(E, *well, ctx, ch);
  } else {
    p = shooting::solve_v_shoot(E, shape, ch, ctx);
  }
  json cfg = base_config("solve", c, shape);
  cfg["E"] = E;
  cfg["n"] = n;
  cfg["solver"] = solver_name;
  const std::string hash = io::config_hash(cfg);
  if (format == "csv") {
    SpectralCurve curve{ch, shape.descriptor(), {p}, {}};
    io::write_curve_csv(out, curve, hash);
  } else {
    out << json{{"tool", io::kToolName},
                {"version", io::kToolVersion},
                {"config_hash", hash},
                {"shape", shape.descriptor()},
                {"channel", io::to_json(ch)},
                {"solver", solver_name},
                {"point", io::to_json(p)}}
               .dump(2)
        << "\n";
  }
  return kSuccess;
}

std::vector<int> parse_states(const std::optional<std::string>& text) {
  if (!text) return {0};
  std::vector<int> states;
  std::stringstream ss(*text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw InvalidInput("--states has an empty entry");
    std::size_t used = 0;
    int n = 0;
    try {
      n = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || n < 0) throw InvalidInput("--states entry is not a node count: " + item);
    states.push_back(n);
  }
  return states;
}

int cmd_curve(const Common& c, const GridArgs& g, const std::vector<int>& states, const std::string& solver_name,
              const std::string& dir, const std::string& name, std::ostream& out) {
  if (states.empty()) throw InvalidInput("--states needs at least one node count");
  const PhysicalContext ctx(c.m);
  const Shape shape = load_shape(c.shape);
  const auto grid = make_grid(g, ctx);
  spectral::TraceOptions opt;
  opt.solver = spectral::parse_solver(solver_name);
  opt.threads = c.threads;
  opt.warm_start = c.threads <= 1;
  json combined = {{"tool", io::kToolName}, {"version", io::kToolVersion}, {"curves", json::array()}};
  for (int n : states) {
    const Channel ch = Channel::make(c.d, c.l, n);
    const SpectralCurve curve = spectral::trace_curve(shape, ch, grid, ctx, opt);
    json cfg = base_config("curve", c, shape);
    cfg["n"] = n;
    cfg["grid"] = {grid.front(), grid.back(), grid.size()};
    cfg["solver"] = solver_name;
    const std::string hash = io::config_hash(cfg);
    std::ostringstream csv;
    io::write_curve_csv(csv, curve, hash);
    if (dir == "-") {
      out << csv.str();
    } else {
      const std::string path = join_dir(dir, name + "_n" + std::to_string(n) + ".csv");
      write_file(path, csv.str());
      out << "wrote " << path << " (" << curve.points.size() << " points, " << curve.gaps.size() << " gaps)\n";
    }
    json entry = io::to_json(curve);
    entry["config_hash"] = hash;
    combined["curves"].push_back(entry);
  }
  if (dir != "-") {
    const std::string path = join_dir(dir, name + ".json");
    write_file(path, combined.dump(2) + "\n");
    out << "wrote " << path << "\n";
  }
  return kSuccess;
}

struct BoundsArgs {
  int n = 0;
  std::optional<double> t1, t2;
  std::string lower_well, upper_well;
  std::string dir = ".";
  std::string name = "bounds";
};

int cmd_bounds(const Common& c, const GridArgs& g, const BoundsArgs& b, std::ostream& out) {
  const PhysicalContext ctx(c.m);
  const Shape shape = load_shape(c.shape);
  const Channel ch = Channel::make(c.d, c.l, b.n);
  const auto grid = make_grid(g, ctx);
  json cfg = base_config("bounds", c, shape);
  cfg["n"] = b.n;
  cfg["grid"] = {grid.front(), grid.back(), grid.size()};

  std::vector<bounds::BoundsRow> rows;
  if (!b.lower_well.empty() || !b.upper_well.empty()) {
    if (b.lower_well.empty() || b.upper_well.empty()) throw InvalidInput("--lower-well and --upper-well go together");
    const auto lower = io::parse_shape(b.lower_well).as_square_well();
    const auto upper = io::parse_shape(b.upper_well).as_square_well();
    if (!lower || !upper) throw InvalidInput("explicit bounding wells must be square wells");
    cfg["lower_well"] = b.lower_well;
    cfg["upper_well"] = b.upper_well;
    const shooting::ShootingProblem problem(shape, ch, ctx);
    for (double E : grid) {
      const auto pair = bounds::bound_with_wells(E, *lower, *upper, ch, ctx);
      bounds::BoundsRow row;
      row.E = E;
      row.v_lower = pair.v_lower;
      row.v_upper = pair.v_upper;
      row.t1 = pair.t1;
      row.t2 = pair.t2;
      row.rigorous = bounds::rigorous_energy(E);
      try {
        row.point = problem.solve(E);
      } catch (const NoBoundState&) {
      }
      rows.push_back(row);
    }
  } else if (b.t1 || b.t2) {
    if (!b.t1 || !b.t2) throw InvalidInput("--t1 and --t2 go together");
    cfg["t1"] = *b.t1;
    cfg["t2"] = *b.t2;
    rows = bounds::bounds_curve_fixed(shape, ch, grid, ctx, *b.t1, *b.t2);
  } else {
    cfg["optimize"] = true;
    rows = bounds::bounds_curve(shape, ch, grid, ctx);
  }

  const std::string hash = io::config_hash(cfg);
  std::ostringstream csv;
  io::write_bounds_csv(csv, rows, ch, shape.descriptor(), hash);
  std::size_t one_sided = 0, unsandwiched = 0;
  for (const auto& r : rows) {
    one_sided += (r.v_lower.has_value() != r.v_upper.has_value()) ? 1 : 0;
    unsandwiched += r.sandwiched() ? 0 : 1;
  }
  if (b.dir == "-") {
    out << csv.str();
  } else {
    const std::string path = join_dir(b.dir, b.name + ".csv");
    write_file(path, csv.str());
    json doc = {{"tool", io::kToolName},       {"version", io::kToolVersion},
                {"config_hash", hash},         {"shape", shape.descriptor()},
                {"channel", io::to_json(ch)},  {"rows", json::array()},
                {"one_sided_rows", one_sided}, {"rows_outside_bounds", unsandwiched}};
    for (const auto& r : rows) doc["rows"].push_back(io::to_json(r));
    const std::string jpath = join_dir(b.dir, b.name + ".json");
    write_file(jpath, doc.dump(2) + "\n");
    out << "wrote " << path << " and " << jpath << " (" << rows.size() << " rows, " << one_sided
        << " one-sided, " << unsandwiched << " outside their bounds)\n";
  }
  return kSuccess;
}

int cmd_verify(const Common& c, const std::string& suite, std::ostream& out) {
  const PhysicalContext ctx(c.m);
  std::vector<std::string> names;
  if (suite == "all") {
    names = verify::suite_names();
  } else {
    names = {suite};
  }
  json doc = {{"tool", io::kToolName}, {"version", io::kToolVersion}, {"suites", json::array()}};
  bool ok = true;
  for (const auto& name : names) {
    const auto res = verify::run_suite(name, ctx, c.threads);
    ok = ok && res.ok;
    doc["suites"].push_back({{"suite", res.name}, {"ok", res.ok}, {"report", res.report}});
  }
  doc["ok"] = ok;
  out << doc.dump(2) << "\n";
  return ok ? kSuccess : kInvariantViolation;
}

}  // namespace

int threads_from_env() {
  if (const char* env = std::getenv("KGSPEC_THREADS")) {
    try {
      return std::max(1, std::stoi(env));
    } catch (const std::exception&) {
    }
  }
  return 1;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Klein-Gordon spectral curves, square-well bounds and theorem checks", "kgspec"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(io::kToolName) + " " + io::kToolVersion);

  Common common;
  common.threads = threads_from_env();
  GridArgs grid;

  auto* solve = app.add_subcommand("solve", "solve one state at one energy");
  add_common(solve, common);
  double E = 0.0;
  int n = 0;
  std::string solver = "shoot";
  std::string format = "json";
  solve->add_option("--E", E, "energy")->required();
  solve->add_option("--n", n, "node count");
  solve->add_option("--solver", solver, "exact or shoot")->check(CLI::IsMember({"exact", "shoot"}));
  solve->add_option("--out", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  auto* curve = app.add_subcommand("curve", "trace v = G(E) for one or more states");
  add_common(curve, common);
  add_grid(curve, grid);
  std::optional<std::string> states_text;
  std::string curve_solver = "shoot";
  std::string dir = ".";
  std::string name = "curve";
  curve->add_option("--states", states_text, "node counts, comma separated (default 0)");
  curve->add_option("--solver", curve_solver, "exact or shoot")->check(CLI::IsMember({"exact", "shoot"}));
  curve->add_option("--out-dir", dir, "output directory, or - for stdout");
  curve->add_option("--name", name, "file name stem");

  auto* bnds = app.add_subcommand("bounds", "square-well lower and upper bounds on the coupling");
  add_common(bnds, common);
  add_grid(bnds, grid);
  BoundsArgs b;
  bool optimize = false;
  bnds->add_option("--n", b.n, "node count");
  bnds->add_flag("--optimize", optimize, "optimize the contact points (default without --t1/--t2)");
  bnds->add_option("--t1", b.t1, "fixed inner-envelope contact radius");
  bnds->add_option("--t2", b.t2, "fixed outer-envelope contact radius");
  bnds->add_option("--lower-well", b.lower_well, "explicit lower well, e.g. shifted-well:t=1.03,inner=-1.001,floor=-0.0025");
  bnds->add_option("--upper-well", b.upper_well, "explicit upper well, e.g. square-well:t=0.9675,depth=0.9984");
  bnds->add_option("--out-dir", b.dir, "output directory, or - for stdout");
  bnds->add_option("--name", b.name, "file name stem");

  auto* ver = app.add_subcommand("verify", "run an invariant suite");
  add_common(ver, common, false);
  std::string suite;
  std::vector<std::string> allowed = verify::suite_names();
  allowed.push_back("all");
  ver->add_option("--suite", suite, "concavity, monotonicity, comparison, oracle, inequality, shift or all")
      ->required()
      ->check(CLI::IsMember(allowed));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kInvalidInput;
  }

  try {
    if (optimize && (b.t1 || b.t2)) throw InvalidInput("--optimize conflicts with --t1/--t2");
    if (*solve) return cmd_solve(common, E, n, solver, format, out);
    if (*curve) return cmd_curve(common, grid, parse_states(states_text), curve_solver, dir, name, out);
    if (*bnds) return cmd_bounds(common, grid, b, out);
    if (*ver) return cmd_verify(common, suite, out);
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const NoBoundState& e) {
    err << "no bound state: " << e.what() << "\n";
    return kNoBoundState;
  } catch (const InvariantViolation& e) {
    err << "invariant violation: " << e.what() << "\n";
    return kInvariantViolation;
  }
  return kInvalidInput;
}

}  // namespace kgspec::cli
