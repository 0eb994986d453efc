#include "kgspec/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace kgspec {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

void require_positive(double x, const char* what) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw InvalidInput(std::string(what) + " must be a positive finite number");
  }
}

}  // namespace

Shape Shape::square_well(double halfwidth, double depth) {
  require_positive(halfwidth, "square-well halfwidth t");
  require_positive(depth, "square-well depth");
  return Shape(shapes::SquareWell{halfwidth, depth});
}

Shape Shape::shifted_square_well(double halfwidth, double inner, double floor) {
  require_positive(halfwidth, "shifted-well halfwidth t");
  if (!(inner < 0.0) || !std::isfinite(inner)) throw InvalidInput("shape must be non-positive and not identically zero (inner < 0)");
  if (floor > 0.0 || !std::isfinite(floor)) throw InvalidInput("shape must be non-positive (floor <= 0)");
  if (inner > floor) throw InvalidInput("shape must be monotone non-decreasing (inner <= floor)");
  return Shape(shapes::ShiftedSquareWell{halfwidth, inner, floor});
}

Shape Shape::woods_saxon(double q, double radius, double depth) {
  require_positive(q, "Woods-Saxon range q");
  require_positive(radius, "Woods-Saxon radius");
  require_positive(depth, "Woods-Saxon depth");
  return Shape(shapes::WoodsSaxon{q, radius, depth});
}

Shape Shape::woods_saxon_steepness(double b, double radius, double depth) {
  require_positive(b, "Woods-Saxon steepness b");
  return woods_saxon(1.0 / b, radius, depth);
}

Shape Shape::exponential(double range, double depth) {
  require_positive(range, "exponential range a");
  require_positive(depth, "exponential depth");
  return Shape(shapes::Exponential{range, depth});
}

Shape Shape::tabulated(std::vector<double> radius, std::vector<double> value) {
  if (radius.size() != value.size() || radius.size() < 2) {
    throw InvalidInput("tabulated shape needs at least two (radius, value) pairs");
  }
  if (radius.front() != 0.0) throw InvalidInput("tabulated shape must start at radius 0");
  for (std::size_t i = 0; i < radius.size(); ++i) {
    if (!std::isfinite(radius[i]) || !std::isfinite(value[i])) {
      throw InvalidInput("tabulated shape must be bounded (finite values)");
    }
    if (value[i] > 0.0) throw InvalidInput("shape must be non-positive");
    if (i > 0 && !(radius[i] > radius[i - 1])) {
      throw InvalidInput("tabulated radii must be strictly increasing");
    }
    if (i > 0 && value[i] < value[i - 1]) {
      throw InvalidInput("shape must be monotone non-decreasing (attractive)");
    }
  }
  if (!(value.front() < 0.0)) throw InvalidInput("shape must not be identically zero");
  const bool zero_tail = std::abs(value.back()) < kTailTolerance;
  return Shape(shapes::Tabulated{std::move(radius), std::move(value), zero_tail});
}

Shape Shape::blend(const Shape& lower, const Shape& upper, double a) {
  if (!(a >= 0.0 && a <= 1.0)) throw InvalidInput("blend parameter a must lie in [0, 1]");
  return Shape(shapes::Blend{std::make_shared<const Shape>(lower),
                             std::make_shared<const Shape>(upper), a});
}

Shape Shape::shifted(const Shape& base, double shift) {
  if (!(shift >= 0.0) || !std::isfinite(shift)) throw InvalidInput("shift s must be >= 0");
  return Shape(shapes::Shifted{std::make_shared<const Shape>(base), shift});
}

double Shape::evaluate(double r) const {
  if (!(r >= 0.0)) throw InvalidInput("shapes are evaluated at radii r >= 0");
  return std::visit(
      Overloaded{
          [r](const shapes::SquareWell& s) { return r <= s.halfwidth ? -s.depth : 0.0; },
          [r](const shapes::ShiftedSquareWell& s) { return r <= s.halfwidth ? s.inner : s.floor; },
          [r](const shapes::WoodsSaxon& s) {
            const double x = (r - s.radius) / s.range;
            if (x > 700.0) return -s.depth * std::exp(-x);
            return -s.depth / (1.0 + std::exp(x));
          },
          [r](const shapes::Exponential& s) { return -s.depth * std::exp(-r / s.range); },
          [r](const shapes::Tabulated& s) {
            if (r >= s.radius.back()) {
              if (r == s.radius.back() || s.zero_tail) return s.value.back();
              throw InvalidInput("radius outside tabulated range (table has no zero tail)");
            }
            const auto it = std::upper_bound(s.radius.begin(), s.radius.end(), r);
            const auto i = static_cast<std::size_t>(it - s.radius.begin());
            const double r0 = s.radius[i - 1], r1 = s.radius[i];
            const double w = (r - r0) / (r1 - r0);
            return s.value[i - 1] + w * (s.value[i] - s.value[i - 1]);
          },
          [r](const shapes::Blend& s) {
            const double lo = s.lower->evaluate(r);
            return lo + s.a * (s.upper->evaluate(r) - lo);
          },
          [r](const shapes::Shifted& s) { return s.base->evaluate(r) - s.shift; },
      },
      kind_);
}

double Shape::left_limit(double r) const {
  if (r <= 0.0) return evaluate(0.0);
  return evaluate(std::nextafter(r, 0.0));
}

double Shape::right_limit(double r) const {
  return evaluate(std::nextafter(r, std::numeric_limits<double>::infinity()));
}

double Shape::floor() const {
  return std::visit(
      Overloaded{
          [](const shapes::ShiftedSquareWell& s) { return s.floor; },
          [](const shapes::Tabulated& s) { return s.zero_tail ? 0.0 : s.value.back(); },
          [](const shapes::Blend& s) {
            const double lo = s.lower->floor();
            return lo + s.a * (s.upper->floor() - lo);
          },
          [](const shapes::Shifted& s) { return s.base->floor() - s.shift; },
          [](const auto&) { return 0.0; },
      },
      kind_);
}

double Shape::support_radius() const {
  return std::visit(
      Overloaded{
          [](const shapes::SquareWell& s) { return s.halfwidth; },
          [](const shapes::ShiftedSquareWell& s) { return s.halfwidth; },
          [](const shapes::WoodsSaxon& s) {
            if (s.depth <= kTailTolerance) return 0.0;
            return std::max(0.0, s.radius + s.range * std::log(s.depth / kTailTolerance - 1.0));
          },
          [](const shapes::Exponential& s) {
            if (s.depth <= kTailTolerance) return 0.0;
            return s.range * std::log(s.depth / kTailTolerance);
          },
          [](const shapes::Tabulated& s) {
            const double tail = s.value.back();
            for (std::size_t i = s.value.size(); i-- > 0;) {
              if (std::abs(s.value[i] - tail) >= kTailTolerance) {
                return s.radius[std::min(i + 1, s.radius.size() - 1)];
              }
            }
            return s.radius.front();
          },
          [](const shapes::Blend& s) {
            return std::max(s.lower->support_radius(), s.upper->support_radius());
          },
          [](const shapes::Shifted& s) { return s.base->support_radius(); },
      },
      kind_);
}

std::vector<double> Shape::breakpoints() const {
  std::vector<double> out = std::visit(
      Overloaded{
          [](const shapes::SquareWell& s) { return std::vector<double>{s.halfwidth}; },
          [](const shapes::ShiftedSquareWell& s) { return std::vector<double>{s.halfwidth}; },
          [](const shapes::Tabulated& s) {
            return std::vector<double>(s.radius.begin() + 1, s.radius.end());
          },
          [](const shapes::Blend& s) {
            auto a = s.lower->breakpoints();
            const auto b = s.upper->breakpoints();
            a.insert(a.end(), b.begin(), b.end());
            return a;
          },
          [](const shapes::Shifted& s) { return s.base->breakpoints(); },
          [](const auto&) { return std::vector<double>{}; },
      },
      kind_);
  const double support = support_radius();
  std::erase_if(out, [support](double r) { return !(r > 0.0) || r > support; });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ClassCheck Shape::check_class() const {
  ClassCheck c;
  const double support = support_radius();
  const double r_max = 1.5 * support + 1.0;
  constexpr int kSamples = 10000;
  double prev = evaluate(0.0);
  double max_value = prev;
  if (!std::isfinite(prev)) c.bounded = false;
  for (int i = 1; i <= kSamples; ++i) {
    const double r = r_max * i / kSamples;
    const double f = evaluate(r);
    if (!std::isfinite(f)) c.bounded = false;
    if (f < prev) c.monotone = false;
    max_value = std::max(max_value, f);
    prev = f;
  }
  for (double b : breakpoints()) {
    if (right_limit(b) < left_limit(b)) c.monotone = false;
  }
  c.non_positive = max_value <= 0.0 && floor() <= 0.0;
  c.not_identically_zero = evaluate(0.0) < 0.0;
  c.vanishes_at_infinity = std::abs(floor()) < kTailTolerance;
  if (!c.bounded) c.violations.emplace_back("shape must be bounded");
  if (!c.non_positive) c.violations.emplace_back("shape must be non-positive");
  if (!c.not_identically_zero) c.violations.emplace_back("shape must not be identically zero");
  if (!c.monotone) c.violations.emplace_back("shape must be monotone non-decreasing (attractive)");
  if (!c.vanishes_at_infinity) c.violations.emplace_back("shape must vanish at infinity");
  return c;
}

std::string Shape::descriptor() const {
  return std::visit(
      Overloaded{
          [](const shapes::SquareWell& s) {
            std::string out = "square-well:t=" + fmt(s.halfwidth);
            if (s.depth != 1.0) out += ",depth=" + fmt(s.depth);
            return out;
          },
          [](const shapes::ShiftedSquareWell& s) {
            return "shifted-well:t=" + fmt(s.halfwidth) + ",inner=" + fmt(s.inner) +
                   ",floor=" + fmt(s.floor);
          },
          [](const shapes::WoodsSaxon& s) {
            std::string out = "woods-saxon:q=" + fmt(s.range);
            if (s.radius != 1.0) out += ",R=" + fmt(s.radius);
            if (s.depth != 1.0) out += ",depth=" + fmt(s.depth);
            return out;
          },
          [](const shapes::Exponential& s) {
            std::string out = "exponential:a=" + fmt(s.range);
            if (s.depth != 1.0) out += ",depth=" + fmt(s.depth);
            return out;
          },
          [](const shapes::Tabulated& s) {
            return "table:" + std::to_string(s.radius.size()) + "pts,rmax=" + fmt(s.radius.back());
          },
          [](const shapes::Blend& s) {
            return "blend(" + s.lower->descriptor() + "|" + s.upper->descriptor() +
                   ",a=" + fmt(s.a) + ")";
          },
          [](const shapes::Shifted& s) {
            return "shifted(" + s.base->descriptor() + ",s=" + fmt(s.shift) + ")";
          },
      },
      kind_);
}

std::optional<Shape::WellGeometry> Shape::as_square_well() const {
  if (const auto* s = std::get_if<shapes::SquareWell>(&kind_)) {
    return WellGeometry{s->halfwidth, -s->depth, 0.0};
  }
  if (const auto* s = std::get_if<shapes::ShiftedSquareWell>(&kind_)) {
    return WellGeometry{s->halfwidth, s->inner, s->floor};
  }
  if (const auto* s = std::get_if<shapes::Shifted>(&kind_)) {
    if (auto base = s->base->as_square_well()) {
      return WellGeometry{base->halfwidth, base->inner - s->shift, base->floor - s->shift};
    }
  }
  return std::nullopt;
}

Shape outer_envelope(const Shape& shape, double t2) {
  require_positive(t2, "contact radius t2");
  const double value = shape.evaluate(t2);
  if (!(value < -kTailTolerance)) {
    throw InvalidInput("outer envelope is degenerate: f(t2) = 0");
  }
  return Shape::square_well(t2, -value);
}

Shape inner_envelope(const Shape& shape, double t1) {
  require_positive(t1, "contact radius t1");
  const double inner = shape.evaluate(0.0);
  const double floor = shape.right_limit(t1);
  if (!(floor - inner > kTailTolerance)) {
    throw InvalidInput("inner envelope is degenerate: f(t1+) = f(0)");
  }
  return Shape::shifted_square_well(t1, inner, floor);
}

double shift_energy(double E, double v, double s, const PhysicalContext& ctx) {
  if (!(s >= 0.0)) throw InvalidInput("shift s must be >= 0");
  if (!(v > 0.0)) throw InvalidInput("coupling v must be > 0");
  if (!ctx.admits(E)) throw NoBoundState("shift_energy: the unshifted state must satisfy |E| < m");
  return E - v * s;
}

Shape load_tabulated(std::istream& in) {
  std::vector<double> radius, value;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    double r = 0.0, f = 0.0;
    if (!(ls >> r)) continue;
    if (!(ls >> f)) {
      throw InvalidInput("tabulated shape: expected two columns on line " + std::to_string(line_no));
    }
    radius.push_back(r);
    value.push_back(f);
  }
  return Shape::tabulated(std::move(radius), std::move(value));
}

Shape load_tabulated_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open shape table: " + path);
  return load_tabulated(in);
}

bool pointwise_ordered(const Shape& lower, const Shape& upper, int samples, double tol) {
  const double r_max = 1.5 * std::max(lower.support_radius(), upper.support_radius()) + 1.0;
  for (int i = 0; i <= samples; ++i) {
    const double r = r_max * i / samples;
    if (lower.evaluate(r) > upper.evaluate(r) + tol) return false;
  }
  auto cuts = lower.breakpoints();
  const auto more = upper.breakpoints();
  cuts.insert(cuts.end(), more.begin(), more.end());
  for (double b : cuts) {
    if (lower.left_limit(b) > upper.left_limit(b) + tol) return false;
    if (lower.right_limit(b) > upper.right_limit(b) + tol) return false;
  }
  return lower.floor() <= upper.floor() + tol;
}

}  // namespace kgspec
