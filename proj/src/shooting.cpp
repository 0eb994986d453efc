#include "kgspec/shooting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "kgspec/specfun.hpp"

namespace kgspec::shooting {

namespace {

constexpr double kRenormalizeAbove = 1e150;
constexpr int kDefaultSteps = 10000;
// Exterior tail sampled out to this many decay lengths beyond r_match.
constexpr double kTailDecayLengths = 20.0;
constexpr double kTailStepTimesK = 0.002;

// Running sign-change counter with the same zero threshold as count_nodes.
class NodeCounter {
 public:
  void add(double value) {
    const double a = std::abs(value);
    running_max_ = std::max(running_max_, a);
    if (a <= kNodeZeroThreshold * running_max_ || a == 0.0) return;
    const int sign = value > 0.0 ? 1 : -1;
    if (last_sign_ != 0 && sign != last_sign_) ++nodes_;
    last_sign_ = sign;
  }
  void rescale(double factor) { running_max_ *= factor; }
  int nodes() const { return nodes_; }

 private:
  int nodes_ = 0;
  int last_sign_ = 0;
  double running_max_ = 0.0;
};

}  // namespace

void ShootConfig::validate() const {
  if (step < 0.0 || r_start < 0.0 || r_match < 0.0 || v_start < 0.0 || v_cap < 0.0) {
    throw InvalidInput("shooting lengths and couplings must be >= 0 (0 selects the default)");
  }
  if (!(tol_v > 0.0)) throw InvalidInput("tol_v must be > 0");
  if (!(scan_factor > 1.0)) throw InvalidInput("scan_factor must be > 1");
  if (!(graded_ratio > 0.0 && graded_ratio <= 0.5)) throw InvalidInput("graded_ratio must lie in (0, 0.5]");
  if (r_match > 0.0 && r_start >= r_match) throw InvalidInput("r_start must be < r_match");
}

std::string ShootConfig::describe() const {
  std::ostringstream os;
  os.precision(17);
  os << "step=" << step << ";r_start=" << r_start << ";r_match=" << r_match << ";v_start=" << v_start
     << ";v_cap=" << v_cap << ";tol_v=" << tol_v << ";scan=" << scan_factor << ";graded=" << graded_ratio;
  return os.str();
}

ShootingProblem::ShootingProblem(Shape shape, Channel channel, PhysicalContext ctx, ShootConfig cfg)
    : shape_(std::move(shape)), channel_(channel), ctx_(ctx), cfg_(cfg) {
  cfg_.validate();
  const ClassCheck check = shape_.check_class();
  if (!check.bounded || !check.non_positive || !check.not_identically_zero || !check.monotone) {
    throw InvalidInput("shape outside the supported class: " + check.violations.front());
  }
  f0_ = shape_.evaluate(0.0);
  floor_ = shape_.floor();
  r_match_ = cfg_.r_match > 0.0 ? cfg_.r_match : shape_.support_radius();
  if (!(r_match_ > 0.0)) throw InvalidInput("shape has zero support radius");
  const double h_max = cfg_.step > 0.0 ? cfg_.step : r_match_ / kDefaultSteps;
  const bool radial = !channel_.one_dimensional();
  const double start = radial ? (cfg_.r_start > 0.0 ? cfg_.r_start : 1e-6 * r_match_) : 0.0;
  if (start >= r_match_) throw InvalidInput("r_start must be < r_match");

  std::vector<double> knots;
  for (double b : shape_.breakpoints()) {
    if (b > start && b < r_match_) knots.push_back(b);
  }
  knots.push_back(r_match_);

  // Steps land exactly on every breakpoint. Near the origin of a radial
  // problem the step grows geometrically so the centrifugal term stays resolved.
  grid_.push_back(start);
  double r = start;
  for (double knot : knots) {
    while (r < knot) {
      const double graded = radial ? cfg_.graded_ratio * r : h_max;
      if (graded < h_max && r + graded < knot) {
        r += graded;
        grid_.push_back(r);
        continue;
      }
      const auto pieces = static_cast<long>(std::ceil((knot - r) / h_max - 1e-9));
      const double base = r;
      const double h = (knot - base) / static_cast<double>(std::max(1L, pieces));
      for (long i = 1; i < pieces; ++i) grid_.push_back(base + i * h);
      grid_.push_back(knot);
      r = knot;
    }
  }

  const std::size_t n = grid_.size();
  f_right_.resize(n);
  f_left_.resize(n);
  f_mid_.resize(n > 0 ? n - 1 : 0);
  std::size_t next_knot = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double ri = grid_[i];
    const bool at_knot = next_knot < knots.size() && ri == knots[next_knot];
    if (at_knot) {
      ++next_knot;
      f_left_[i] = shape_.left_limit(ri);
      f_right_[i] = shape_.right_limit(ri);
    } else {
      f_left_[i] = f_right_[i] = shape_.evaluate(ri);
    }
    if (i + 1 < n) f_mid_[i] = shape_.evaluate(0.5 * (ri + grid_[i + 1]));
  }
}

double ShootingProblem::exterior_k(double E, double v) const {
  const double e_ext = E - v * floor_;
  const double m = ctx_.m();
  if (!(std::abs(e_ext) < m)) return std::numeric_limits<double>::quiet_NaN();
  return std::sqrt((m - e_ext) * (m + e_ext));
}

double ShootingProblem::exterior_logderiv(double E, double v) const {
  const double k = exterior_k(E, v);
  if (std::isnan(k)) return k;
  return k * specfun::riccati_exterior_logderiv(specfun::Order::for_channel(channel_), k * r_match_);
}

ShootingProblem::Sweep ShootingProblem::sweep(double E, double v, std::vector<double>* samples) const {
  const double m2 = ctx_.m() * ctx_.m();
  const bool nonreduced = channel_.needs_nonreduced();
  const double Q = nonreduced ? 0.0 : centrifugal_q(channel_);
  auto kappa = [&](double f) {
    const double e = E - v * f;
    return m2 - e * e;
  };
  auto rhs = [&](double r, double yy, double pp, double kap, double& dy, double& dp) {
    dy = pp;
    if (nonreduced) {
      dp = -pp / r + kap * yy;
    } else {
      dp = (Q == 0.0 ? kap : kap + Q / (r * r)) * yy;
    }
  };
  auto rk4 = [&](double a, double h, double ka, double km, double kb, double& y, double& p) {
    double dy1, dp1, dy2, dp2, dy3, dp3, dy4, dp4;
    rhs(a, y, p, ka, dy1, dp1);
    rhs(a + 0.5 * h, y + 0.5 * h * dy1, p + 0.5 * h * dp1, km, dy2, dp2);
    rhs(a + 0.5 * h, y + 0.5 * h * dy2, p + 0.5 * h * dp2, km, dy3, dp3);
    rhs(a + h, y + h * dy3, p + h * dp3, kb, dy4, dp4);
    y += h / 6.0 * (dy1 + 2.0 * dy2 + 2.0 * dy3 + dy4);
    p += h / 6.0 * (dp1 + 2.0 * dp2 + 2.0 * dp3 + dp4);
  };
  auto reduced_value = [&](double r, double yy) { return nonreduced ? std::sqrt(r) * yy : yy; };
  auto reduced_logderiv = [&](double r, double yy, double pp) {
    if (yy == 0.0) return std::copysign(std::numeric_limits<double>::infinity(), pp);
    return nonreduced ? pp / yy + 0.5 / r : pp / yy;
  };

  // E - v f decreases outward, so the oscillatory region is one interval
  // [0, r_t). Outward integration stops at its last grid point; past it the
  // decaying solution is integrated inward from r_match, which is stable.
  const std::size_t n = grid_.size();
  const double target = exterior_logderiv(E, v);
  std::size_t ic = n - 1;
  if (!std::isnan(target)) {
    while (ic > 0 && kappa(f_left_[ic]) > 0.0 && kappa(f_mid_[ic - 1]) > 0.0 && kappa(f_right_[ic - 1]) > 0.0) --ic;
    if (ic == 0) ic = n - 1;
  }

  // Initial data. Radial problems start on the regular series
  // phi = r^s (1 + c r^2), scaled by r0^-s; d = 2, l = 0 uses R = 1 + kappa r^2 / 4.
  double y = 0.0, p = 0.0;
  const double r0 = grid_.front();
  const double k0 = kappa(f0_);
  if (channel_.one_dimensional()) {
    if (channel_.even_parity()) {
      y = 1.0;
    } else {
      p = 1.0;
    }
  } else if (nonreduced) {
    y = 1.0 + 0.25 * k0 * r0 * r0;
    p = 0.5 * k0 * r0;
  } else {
    const double s = channel_.regular_exponent();
    const double c = k0 / (2.0 * (2.0 * s + 1.0));
    y = 1.0 + c * r0 * r0;
    p = s / r0 + c * (s + 2.0) * r0;
  }

  NodeCounter counter;
  if (samples) {
    samples->clear();
    samples->reserve(n);
  }
  const double first = reduced_value(r0, y);
  counter.add(first);
  if (samples) samples->push_back(first);

  for (std::size_t i = 0; i < ic; ++i) {
    rk4(grid_[i], grid_[i + 1] - grid_[i], kappa(f_right_[i]), kappa(f_mid_[i]), kappa(f_left_[i + 1]), y, p);
    if (std::abs(y) > kRenormalizeAbove) {
      const double factor = 1.0 / std::abs(y);
      y *= factor;
      p *= factor;
      counter.rescale(factor);
      if (samples) {
        for (double& s : *samples) s *= factor;
      }
    }
    const double value = reduced_value(grid_[i + 1], y);
    counter.add(value);
    if (samples) samples->push_back(value);
  }

  Sweep out;
  const double rc = grid_[ic];
  out.r_match = rc;
  out.phi = reduced_value(rc, y);
  out.logderiv_out = reduced_logderiv(rc, y, p);
  out.logderiv_in = target;
  out.nodes = counter.nodes();
  if (ic + 1 == n) return out;

  // Inward leg from r_match, seeded with the exterior log-derivative.
  const double rm = grid_.back();
  double yi = 1.0;
  double pi = nonreduced ? target - 0.5 / rm : target;
  std::vector<double> inward;
  if (samples) {
    inward.reserve(n - ic);
    inward.push_back(reduced_value(rm, yi));
  }
  NodeCounter inner_counter;
  inner_counter.add(reduced_value(rm, yi));
  for (std::size_t j = n - 1; j > ic; --j) {
    rk4(grid_[j], grid_[j - 1] - grid_[j], kappa(f_left_[j]), kappa(f_mid_[j - 1]), kappa(f_right_[j - 1]), yi, pi);
    if (std::abs(yi) > kRenormalizeAbove) {
      const double factor = 1.0 / std::abs(yi);
      yi *= factor;
      pi *= factor;
      inner_counter.rescale(factor);
      for (double& s : inward) s *= factor;
    }
    const double value = reduced_value(grid_[j - 1], yi);
    inner_counter.add(value);
    if (samples) inward.push_back(value);
  }
  out.logderiv_in = reduced_logderiv(rc, yi, pi);
  out.nodes += inner_counter.nodes();
  if (samples) {
    // Join the legs continuously at rc; inward.back() is the value at rc.
    const double scale = inward.back() != 0.0 ? samples->back() / inward.back() : 0.0;
    for (std::size_t k = inward.size() - 1; k-- > 0;) samples->push_back(scale * inward[k]);
  }
  return out;
}

RadialSolution ShootingProblem::integrate(double E, double v) const {
  ctx_.require_admissible(E);
  if (!(v >= 0.0)) throw InvalidInput("coupling v must be >= 0");
  RadialSolution sol;
  const Sweep s = sweep(E, v, &sol.phi);
  sol.grid = grid_;
  sol.nodes = s.nodes;
  sol.r_match = s.r_match;
  sol.logderiv_at_match = s.logderiv_out;
  sol.normalized = false;
  return sol;
}

ShootingProblem::Probe ShootingProblem::probe(double E, double v) const {
  const Sweep s = sweep(E, v, nullptr);
  double mis;
  if (std::isnan(s.logderiv_in)) {
    mis = s.logderiv_in;
  } else if (std::isinf(s.logderiv_out)) {
    mis = s.logderiv_out;
  } else {
    mis = s.logderiv_out - s.logderiv_in;
  }
  return {s.nodes, mis};
}

double ShootingProblem::mismatch(double E, double v) const {
  ctx_.require_admissible(E);
  return probe(E, v).mismatch;
}

bool ShootingProblem::too_deep(double E, double v) const {
  if (std::isnan(exterior_k(E, v))) return true;
  const Probe pr = probe(E, v);
  const int want = channel_.half_line_nodes();
  if (pr.nodes != want) return pr.nodes > want;
  return pr.mismatch < 0.0;
}

SpectralPoint ShootingProblem::solve(double E, std::optional<double> guess) const {
  ctx_.require_admissible(E);
  const double m = ctx_.m();
  const double depth = std::abs(f0_);
  // Below (m - E) / |f(0)| the interior never oscillates; above the floor
  // feasibility limit the exterior stops decaying.
  double v_min = cfg_.v_start > 0.0 ? cfg_.v_start : (m - E) / depth;
  double v_cap = cfg_.v_cap > 0.0 ? cfg_.v_cap : 50.0 * m / depth;
  if (floor_ < 0.0) v_cap = std::min(v_cap, (m - E) / (-floor_) * (1.0 - 1e-12));
  v_min = std::max(v_min * (1.0 + 1e-9), 1e-300);

  double lo = 0.0, hi = 0.0;
  bool bracketed = false;
  if (guess && *guess > v_min && *guess < v_cap) {
    double width = 1e-3;
    lo = *guess * (1.0 - width);
    hi = *guess * (1.0 + width);
    for (int i = 0; i < 8 && !bracketed; ++i) {
      const bool lo_ok = lo > v_min && !too_deep(E, lo);
      const bool hi_ok = hi < v_cap && too_deep(E, hi);
      if (lo_ok && hi_ok) {
        bracketed = true;
        break;
      }
      width *= 4.0;
      if (!lo_ok) lo = std::max(v_min, *guess * (1.0 - std::min(width, 0.999)));
      if (!hi_ok) hi = std::min(v_cap, *guess * (1.0 + width));
    }
  }
  if (!bracketed) {
    lo = v_min;
    if (too_deep(E, lo)) {
      throw NoBoundState("state " + channel_.label() + " is already over-bound at the scan start");
    }
    while (true) {
      hi = std::min(lo * cfg_.scan_factor, v_cap);
      if (too_deep(E, hi)) break;
      if (hi >= v_cap) {
        std::ostringstream os;
        os << "no coupling below " << v_cap << " gives state " << channel_.label() << " at E=" << E;
        throw NoBoundState(os.str());
      }
      lo = hi;
    }
  }

  while (hi - lo > cfg_.tol_v * hi) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (too_deep(E, mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  const double v = 0.5 * (lo + hi);

  const RadialSolution sol = normalized_solution(E, v);
  if (sol.nodes != channel_.half_line_nodes()) {
    throw NoBoundState("node window for " + channel_.label() + " collapsed at E=" + std::to_string(E));
  }
  SpectralPoint pt;
  pt.E = E;
  pt.v = v;
  pt.n = channel_.n;
  double f1 = 0.0, f2 = 0.0, norm = 0.0;
  for (std::size_t i = 1; i < sol.grid.size(); ++i) {
    const double h = sol.grid[i] - sol.grid[i - 1];
    const double a2 = sol.phi[i - 1] * sol.phi[i - 1];
    const double b2 = sol.phi[i] * sol.phi[i];
    // Right limit at the left end of the cell, left limit at its right end.
    const double fa = i - 1 < f_right_.size() ? f_right_[i - 1] : floor_;
    const double fb = i < f_left_.size() ? f_left_[i] : floor_;
    f1 += 0.5 * h * (fa * a2 + fb * b2);
    f2 += 0.5 * h * (fa * fa * a2 + fb * fb * b2);
    norm += 0.5 * h * (a2 + b2);
  }
  pt.f_mean = f1;
  pt.f2_mean = f2;
  pt.norm_residual = std::abs(norm - 1.0);
  pt.match_residual = std::abs(probe(E, v).mismatch);
  return pt;
}

RadialSolution ShootingProblem::normalized_solution(double E, double v) const {
  RadialSolution sol = integrate(E, v);
  const double k = exterior_k(E, v);
  if (std::isnan(k)) throw NoBoundState("exterior does not decay at this (E, v)");
  const specfun::Order order = specfun::Order::for_channel(channel_);

  // Continue with the decaying exterior solution, phi(r) = phi(r_match)
  // exp(int k L_ext), the integral taken by the trapezoid rule on a fine step.
  const double h = std::min(grid_.size() > 1 ? grid_[grid_.size() - 1] - grid_[grid_.size() - 2] : 1.0,
                            kTailStepTimesK / k);
  const auto steps = static_cast<std::size_t>(std::ceil(kTailDecayLengths / (k * h)));
  double log_phi = 0.0;
  double prev_l = k * specfun::riccati_exterior_logderiv(order, k * r_match_);
  const double phi_match = sol.phi.back();
  sol.grid.reserve(sol.grid.size() + steps);
  sol.phi.reserve(sol.phi.size() + steps);
  for (std::size_t i = 1; i <= steps; ++i) {
    const double r = r_match_ + static_cast<double>(i) * h;
    const double l = k * specfun::riccati_exterior_logderiv(order, k * r);
    log_phi += 0.5 * h * (l + prev_l);
    prev_l = l;
    sol.grid.push_back(r);
    sol.phi.push_back(phi_match * std::exp(log_phi));
  }

  std::vector<double> sq(sol.phi.size());
  std::transform(sol.phi.begin(), sol.phi.end(), sq.begin(), [](double x) { return x * x; });
  const double norm = trapezoid(sol.grid, sq);
  if (!(norm > 0.0) || !std::isfinite(norm)) throw InvariantViolation("solution cannot be normalized");
  const double scale = 1.0 / std::sqrt(norm);
  for (double& x : sol.phi) x *= scale;
  sol.normalized = true;
  return sol;
}

RadialSolution integrate(double E, double v, const Shape& shape, const Channel& channel,
                         const PhysicalContext& ctx, const ShootConfig& cfg) {
  return ShootingProblem(shape, channel, ctx, cfg).integrate(E, v);
}

double mismatch(double E, double v, const Shape& shape, const Channel& channel, const PhysicalContext& ctx,
                const ShootConfig& cfg) {
  return ShootingProblem(shape, channel, ctx, cfg).mismatch(E, v);
}

SpectralPoint solve_v_shoot(double E, const Shape& shape, const Channel& channel, const PhysicalContext& ctx,
                            const ShootConfig& cfg, std::optional<double> guess) {
  return ShootingProblem(shape, channel, ctx, cfg).solve(E, guess);
}

double slope_vE(const SpectralPoint& point) {
  const double den = point.slope_denominator();
  if (!(den < 0.0)) {
    std::ostringstream os;
    os << "E<f> - v<f^2> = " << den << " is not negative at E=" << point.E << ", v=" << point.v;
    throw InvariantViolation(os.str());
  }
  return (point.E - point.v * point.f_mean) / den;
}

}  // namespace kgspec::shooting
