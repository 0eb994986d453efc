#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "kgspec/kernel.hpp"

using namespace kgspec;

TEST(Channel, RejectsInvalidQuantumNumbers) {
  EXPECT_THROW(Channel::make(0, 0, 0), InvalidInput);
  EXPECT_THROW(Channel::make(3, -1, 0), InvalidInput);
  EXPECT_THROW(Channel::make(3, 0, -1), InvalidInput);
  EXPECT_THROW(Channel::make(1, 1, 0), InvalidInput);
  EXPECT_NO_THROW(Channel::make(2, 0, 3));
}

TEST(Channel, OneDimensionalParityAndHalfLineNodes) {
  EXPECT_TRUE(Channel::make(1, 0, 0).even_parity());
  EXPECT_FALSE(Channel::make(1, 0, 1).even_parity());
  EXPECT_EQ(Channel::make(1, 0, 4).half_line_nodes(), 2);
  EXPECT_EQ(Channel::make(1, 0, 3).half_line_nodes(), 1);
  EXPECT_EQ(Channel::make(3, 0, 3).half_line_nodes(), 3);
  EXPECT_TRUE(Channel::make(2, 0, 0).needs_nonreduced());
  EXPECT_FALSE(Channel::make(2, 1, 0).needs_nonreduced());
}

TEST(Centrifugal, MatchesOrderProduct) {
  // Q = nu (nu + 1) with nu = (2l + d - 3) / 2.
  for (int d = 2; d <= 7; ++d) {
    for (int l = 0; l <= 3; ++l) {
      const double nu = 0.5 * (2 * l + d - 3);
      EXPECT_DOUBLE_EQ(centrifugal_q(Channel::make(d, l, 0)), nu * (nu + 1.0)) << d << " " << l;
    }
  }
  EXPECT_EQ(centrifugal_q(Channel::make(1, 0, 0)), 0.0);
  EXPECT_EQ(centrifugal_q(Channel::make(3, 0, 0)), 0.0);
  EXPECT_DOUBLE_EQ(centrifugal_q(Channel::make(2, 0, 0)), -0.25);
  EXPECT_DOUBLE_EQ(centrifugal_q(Channel::make(3, 1, 0)), 2.0);
}

TEST(AsymptoticK, ValuesAndDomain) {
  const PhysicalContext ctx(1.0);
  EXPECT_DOUBLE_EQ(asymptotic_k(0.0, ctx), 1.0);
  EXPECT_NEAR(asymptotic_k(0.6, ctx), 0.8, 1e-15);
  EXPECT_NEAR(asymptotic_k(-0.6, ctx), 0.8, 1e-15);
  EXPECT_NEAR(asymptotic_k(1.5, PhysicalContext(2.5)), 2.0, 1e-15);
  EXPECT_THROW(asymptotic_k(1.0, ctx), InvalidInput);
  EXPECT_THROW(asymptotic_k(-1.2, ctx), InvalidInput);
  EXPECT_THROW(PhysicalContext(0.0), InvalidInput);
}

TEST(CountNodes, SignChangesIgnoringNoise) {
  std::vector<double> sine;
  for (int i = 0; i <= 1000; ++i) sine.push_back(std::sin(3.5 * std::numbers::pi * i / 1000.0));
  EXPECT_EQ(count_nodes(sine), 3);
  const std::vector<double> noisy = {1.0, 0.5, 1e-14, -1e-14, 1e-14, 0.3, -0.2};
  EXPECT_EQ(count_nodes(noisy), 1);
  const std::vector<double> with_zero = {1.0, 0.0, -1.0};
  EXPECT_EQ(count_nodes(with_zero), 1);
  EXPECT_EQ(count_nodes(std::vector<double>{}), 0);
}

TEST(Trapezoid, ExactForLinearAndConvergentForSmooth) {
  const std::vector<double> x = {0.0, 0.1, 0.5, 0.7, 2.0};
  std::vector<double> y;
  for (double xi : x) y.push_back(3.0 * xi - 1.0);
  EXPECT_NEAR(trapezoid(x, y), 4.0, 1e-14);

  std::vector<double> xs, ys;
  for (int i = 0; i <= 2000; ++i) {
    xs.push_back(std::numbers::pi * i / 2000.0);
    ys.push_back(std::sin(xs.back()));
  }
  EXPECT_NEAR(trapezoid(xs, ys), 2.0, 1e-6);
  EXPECT_THROW(trapezoid(x, std::vector<double>{1.0}), InvalidInput);
}

TEST(SpectralPoint, MomentInequalityAndDenominator) {
  SpectralPoint p{0.5, 1.2, 0, -0.6, 0.5};
  EXPECT_TRUE(p.satisfies_moment_inequality());
  EXPECT_NEAR(p.slope_denominator(), 0.5 * -0.6 - 1.2 * 0.5, 1e-15);
}

TEST(SpectralCurve, OrderingCheck) {
  SpectralCurve c;
  c.points = {{-0.5, 1.0}, {0.0, 0.9}, {0.0, 0.8}};
  EXPECT_THROW(c.check_ordered(), InvariantViolation);
  c.points.pop_back();
  EXPECT_NO_THROW(c.check_ordered());
  EXPECT_DOUBLE_EQ(c.max_v(), 1.0);
}
