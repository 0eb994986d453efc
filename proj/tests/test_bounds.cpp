#include <gtest/gtest.h>

#include "kgspec/bounds.hpp"
#include "kgspec/exactwell.hpp"

using namespace kgspec;
using namespace kgspec::bounds;

namespace {

const PhysicalContext kCtx(1.0);
constexpr double kPaperE = -0.512574196;

}  // namespace

TEST(Bounds, RigorousOnlyForNonNegativeEnergies) {
  EXPECT_TRUE(rigorous_energy(0.0));
  EXPECT_TRUE(rigorous_energy(0.7));
  EXPECT_FALSE(rigorous_energy(-1e-9));
}

TEST(Bounds, FixedWoodsSaxonWells) {
  const Channel ground = Channel::make(1, 0, 0);
  const BoundPair b = bound_with_wells(kPaperE, {1.03, -1.001, -0.0025}, {0.9675, -0.9984, 0.0}, ground, kCtx);
  ASSERT_TRUE(b.v_lower && b.v_upper);
  EXPECT_NEAR(*b.v_lower, 1.79017, 2e-3);
  EXPECT_NEAR(*b.v_upper, 1.81478, 2e-3);
  EXPECT_TRUE(b.ordered());
  EXPECT_FALSE(b.one_sided());
  EXPECT_NEAR(*b.v_upper - *b.v_lower, 0.02461, 1e-3);
}

TEST(Bounds, EnvelopesAtContactPointsMatchExplicitWells) {
  const Shape ws = Shape::woods_saxon(0.005);
  const Channel ch = Channel::make(1, 0, 0);
  const BoundPair a = bound_at(0.3, ws, ch, 1.02, 0.98, kCtx);
  const auto inner = inner_envelope(ws, 1.02).as_square_well();
  const auto outer = outer_envelope(ws, 0.98).as_square_well();
  const BoundPair b = bound_with_wells(0.3, *inner, *outer, ch, kCtx);
  EXPECT_EQ(*a.v_lower, *b.v_lower);
  EXPECT_EQ(*a.v_upper, *b.v_upper);
}

TEST(Bounds, DegenerateSideCarriesAReason) {
  const BoundPair b = bound_at(0.3, Shape::woods_saxon(0.005), Channel::make(1, 0, 0), 1.0, 5.0, kCtx);
  EXPECT_TRUE(b.v_lower.has_value());
  EXPECT_FALSE(b.v_upper.has_value());
  EXPECT_TRUE(b.one_sided());
  EXPECT_FALSE(b.upper_reason.empty());
}

TEST(Bounds, SquareWellIsItsOwnOptimalEnvelope) {
  for (const Channel& ch : {Channel::make(1, 0, 0), Channel::make(3, 0, 1)}) {
    for (double E : {-0.6, 0.4}) {
      const OptimizedBounds ob = optimize_bounds(E, Shape::square_well(1.0), ch, kCtx);
      const double exact = exactwell::solve_v(E, 1.0, kCtx, ch).v;
      ASSERT_TRUE(ob.G_L && ob.G_U);
      EXPECT_NEAR(*ob.G_L, exact, 1e-12 * exact);
      EXPECT_NEAR(*ob.G_U, exact, 1e-12 * exact);
      EXPECT_NEAR(ob.t1, 1.0, 1e-9);
      EXPECT_NEAR(ob.t2, 1.0, 1e-9);
    }
  }
}

TEST(Bounds, OptimizedBeatsEveryCoarseContactPoint) {
  const Shape ws = Shape::woods_saxon(0.05);
  const Channel ch = Channel::make(1, 0, 0);
  const OptimizedBounds ob = optimize_bounds(0.5, ws, ch, kCtx);
  ASSERT_TRUE(ob.G_L && ob.G_U);
  EXPECT_TRUE(ob.rigorous);
  for (double t = 0.05; t < ws.support_radius(); t += 0.05) {
    const BoundPair b = bound_at(0.5, ws, ch, t, t, kCtx);
    if (b.v_lower) {
      EXPECT_LE(*b.v_lower, *ob.G_L + 1e-12);
    }
    if (b.v_upper) {
      EXPECT_GE(*b.v_upper, *ob.G_U - 1e-12);
    }
  }
}

TEST(Bounds, SandwichHoldsForNonNegativeEnergies) {
  const Shape ws = Shape::woods_saxon(0.05);
  for (int d : {1, 3}) {
    const auto rows = bounds_curve(ws, Channel::make(d, 0, 0), {0.0, 0.45, 0.9}, kCtx);
    ASSERT_EQ(rows.size(), 3u);
    for (const auto& r : rows) {
      ASSERT_TRUE(r.point.has_value());
      EXPECT_TRUE(r.rigorous);
      EXPECT_TRUE(r.sandwiched()) << "d=" << d << " E=" << r.E;
    }
  }
}

TEST(Bounds, FixedContactCurve) {
  const auto rows = bounds_curve_fixed(Shape::woods_saxon(0.005), Channel::make(1, 0, 0), {kPaperE}, kCtx, 1.03, 0.9675);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].t1, 1.03);
  EXPECT_EQ(rows[0].t2, 0.9675);
  EXPECT_TRUE(rows[0].sandwiched());
}
