#pragma once

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "kgspec/kernel.hpp"

namespace kgspec {

/// |f(r) - floor| below this defines the numerical support radius.
inline constexpr double kTailTolerance = 1e-12;

class Shape;

namespace shapes {

/// -depth for r <= halfwidth, 0 elsewhere.
struct SquareWell {
  double halfwidth = 1.0;
  double depth = 1.0;
};

/// `inner` for r <= halfwidth, `floor` elsewhere (inner <= floor <= 0).
struct ShiftedSquareWell {
  double halfwidth = 1.0;
  double inner = -1.0;
  double floor = 0.0;
};

/// -depth / (1 + exp((r - radius) / range)).
struct WoodsSaxon {
  double range = 0.005;
  double radius = 1.0;
  double depth = 1.0;
};

/// -depth * exp(-r / range).
struct Exponential {
  double range = 1.0;
  double depth = 1.0;
};

/// Piecewise-linear table; beyond the last radius the last value is kept
/// only when it is zero (a flagged zero tail).
struct Tabulated {
  std::vector<double> radius;
  std::vector<double> value;
  bool zero_tail = false;
};

/// lower + a (upper - lower).
struct Blend {
  std::shared_ptr<const Shape> lower;
  std::shared_ptr<const Shape> upper;
  double a = 0.0;
};

/// base - shift.
struct Shifted {
  std::shared_ptr<const Shape> base;
  double shift = 0.0;
};

}  // namespace shapes

/// Result of checking the potential-class conditions on a shape.
struct ClassCheck {
  bool bounded = true;
  bool non_positive = true;
  bool not_identically_zero = true;
  bool monotone = true;
  bool vanishes_at_infinity = true;
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// An immutable, attractive potential shape f(r) on r >= 0.
///
/// Shapes are even in one dimension; callers evaluate at |x|. Discontinuities
/// are reported through breakpoints() so integrators can land on them, and the
/// one-sided limits are available there.
class Shape {
 public:
  using Kind = std::variant<shapes::SquareWell, shapes::ShiftedSquareWell, shapes::WoodsSaxon,
                            shapes::Exponential, shapes::Tabulated, shapes::Blend,
                            shapes::Shifted>;

  static Shape square_well(double halfwidth, double depth = 1.0);
  static Shape shifted_square_well(double halfwidth, double inner, double floor);
  /// Range form: -1 / (1 + exp((r - radius) / q)).
  static Shape woods_saxon(double q, double radius = 1.0, double depth = 1.0);
  /// Steepness form: -1 / (1 + exp(b (r - radius))), b = 1 / q.
  static Shape woods_saxon_steepness(double b, double radius = 1.0, double depth = 1.0);
  static Shape exponential(double range, double depth = 1.0);
  static Shape tabulated(std::vector<double> radius, std::vector<double> value);
  static Shape blend(const Shape& lower, const Shape& upper, double a);
  static Shape shifted(const Shape& base, double shift);

  const Kind& kind() const { return kind_; }

  /// f(r); throws InvalidInput for r < 0 or outside a table without zero tail.
  double evaluate(double r) const;
  double operator()(double r) const { return evaluate(r); }
  double left_limit(double r) const;
  double right_limit(double r) const;

  /// lim f(r) as r -> inf; zero for unshifted shapes.
  double floor() const;
  /// f(0), the most negative value.
  double minimum() const { return evaluate(0.0); }
  /// Smallest radius beyond which |f - floor| < kTailTolerance.
  double support_radius() const;
  /// Radii of jump discontinuities or kinks, sorted, inside (0, support].
  std::vector<double> breakpoints() const;

  ClassCheck check_class() const;
  std::string descriptor() const;

  /// Engages when the shape is a (shifted) square well.
  struct WellGeometry {
    double halfwidth;
    double inner;
    double floor;
  };
  std::optional<WellGeometry> as_square_well() const;

 private:
  explicit Shape(Kind kind) : kind_(std::move(kind)) {}
  Kind kind_;
};

/// Square well touching f from above at t2: f(t2) on r <= t2, zero beyond.
Shape outer_envelope(const Shape& shape, double t2);

/// Shifted well touching f from below at t1: f(0) on r <= t1, f(t1+) beyond.
Shape inner_envelope(const Shape& shape, double t1);

/// Energy of the same state after the potential v f becomes v (f - s).
double shift_energy(double E, double v, double s, const PhysicalContext& ctx);

/// Two-column "radius value" text, one pair per line; '#' starts a comment.
Shape load_tabulated(std::istream& in);
Shape load_tabulated_file(const std::string& path);

/// True when lower(r) <= upper(r) + tol on `samples` points over [0, r_max].
bool pointwise_ordered(const Shape& lower, const Shape& upper, int samples = 10000,
                       double tol = 0.0);

}  // namespace kgspec
