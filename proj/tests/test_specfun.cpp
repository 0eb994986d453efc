#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "kgspec/specfun.hpp"

using namespace kgspec;
using namespace kgspec::specfun;

namespace {

constexpr double kPi = std::numbers::pi;

// sqrt(z) J_mu(z) and sqrt(y) K_mu(y) log-derivatives from the standard library.
double std_interior_logderiv(double mu, double z) {
  return (0.5 + mu) / z - std::cyl_bessel_j(mu + 1.0, z) / std::cyl_bessel_j(mu, z);
}

double std_exterior_logderiv(double mu, double y) {
  return (0.5 + mu) / y - std::cyl_bessel_k(mu + 1.0, y) / std::cyl_bessel_k(mu, y);
}

}  // namespace

TEST(Order, MakeAndChannelMapping) {
  EXPECT_THROW(Order::make(0.3), InvalidInput);
  EXPECT_THROW(Order::make(-1.5), InvalidInput);
  EXPECT_EQ(Order::for_channel(Channel::make(3, 0, 0)).nu, 0.0);
  EXPECT_EQ(Order::for_channel(Channel::make(3, 1, 0)).nu, 1.0);
  EXPECT_EQ(Order::for_channel(Channel::make(2, 0, 0)).nu, -0.5);
  EXPECT_EQ(Order::for_channel(Channel::make(5, 0, 0)), Order::for_channel(Channel::make(3, 1, 0)));
  EXPECT_EQ(Order::for_channel(Channel::make(1, 0, 0)).nu, -1.0);
  EXPECT_EQ(Order::for_channel(Channel::make(1, 0, 1)).nu, 0.0);
  EXPECT_TRUE(Order::make(2.0).elementary());
  EXPECT_FALSE(Order::make(0.5).elementary());
  EXPECT_DOUBLE_EQ(Order::make(1.5).q(), 3.75);
}

TEST(InteriorLogDeriv, AgreesWithStandardLibrary) {
  for (double nu : {-0.5, 0.0, 0.5, 1.0, 1.5, 2.0, 3.5, 6.0}) {
    const Order o = Order::make(nu);
    for (double z : {1e-3, 0.1, 0.7, 1.3, 2.9, 5.0, 11.0, 27.5, 60.0}) {
      const double ref = std_interior_logderiv(o.mu(), z);
      EXPECT_NEAR(riccati_interior_logderiv(o, z), ref, 1e-10 * std::max(1.0, std::abs(ref)))
          << "nu=" << nu << " z=" << z;
    }
  }
}

TEST(InteriorLogDeriv, ElementaryOrders) {
  for (double z : {0.01, 0.4, 1.2, 2.0, 3.0, 7.7}) {
    EXPECT_NEAR(riccati_interior_logderiv(Order::make(-1.0), z), -std::tan(z), 1e-11 * (1 + std::abs(std::tan(z))));
    EXPECT_NEAR(riccati_interior_logderiv(Order::make(0.0), z), 1.0 / std::tan(z), 1e-11 * (1 + 1 / std::abs(std::tan(z))));
    // z j_1(z) = sin z / z - cos z.
    const double f = std::sin(z) / z - std::cos(z);
    const double df = std::cos(z) / z - std::sin(z) / (z * z) + std::sin(z);
    EXPECT_NEAR(riccati_interior_logderiv(Order::make(1.0), z), df / f, 1e-9 * std::max(1.0, std::abs(df / f)));
  }
}

TEST(InteriorValue, TaylorSeriesAtOne) {
  // z j_1(z) = sum_{k>=1} (-1)^(k+1) 2k z^(2k) / (2k+1)!, twelve terms.
  double value = 0.0, deriv = 0.0, fact = 1.0;
  for (int k = 1; k <= 12; ++k) {
    fact = 1.0;
    for (int i = 2; i <= 2 * k + 1; ++i) fact *= i;
    const double sign = (k % 2 == 1) ? 1.0 : -1.0;
    value += sign * 2.0 * k / fact;
    deriv += sign * 4.0 * k * k / fact;
  }
  const Order one = Order::make(1.0);
  EXPECT_NEAR(riccati_interior_value(one, 1.0), value, 1e-13);
  EXPECT_NEAR(riccati_interior_logderiv(one, 1.0), deriv / value, 1e-12);
}

TEST(InteriorValue, AgreesWithStandardLibraryAndClosedForms) {
  for (double nu : {-0.5, 0.0, 1.0, 2.5}) {
    const Order o = Order::make(nu);
    for (double z : {0.2, 1.0, 4.0, 13.0}) {
      const double ref = std::sqrt(kPi * z / 2.0) * std::cyl_bessel_j(o.mu(), z);
      EXPECT_NEAR(riccati_interior_value(o, z), ref, 1e-11) << nu << " " << z;
    }
  }
  for (double z : {0.3, 2.0, 9.0}) {
    EXPECT_NEAR(riccati_interior_value(Order::make(0.0), z), std::sin(z), 1e-12);
    EXPECT_NEAR(riccati_interior_value(Order::make(-1.0), z), std::cos(z), 1e-12);
  }
}

TEST(InteriorValue, SatisfiesTheRiccatiBesselEquation) {
  // phi'' = (nu(nu+1)/z^2 - 1) phi by central differences.
  const double h = 1e-4;
  for (double nu : {-0.5, 0.5, 2.0}) {
    const Order o = Order::make(nu);
    for (double z : {0.8, 2.3, 6.1}) {
      const double p = riccati_interior_value(o, z);
      const double d2 = (riccati_interior_value(o, z + h) - 2 * p + riccati_interior_value(o, z - h)) / (h * h);
      EXPECT_NEAR(d2, (o.q() / (z * z) - 1.0) * p, 1e-6) << nu << " " << z;
    }
  }
}

TEST(ExteriorLogDeriv, ClosedFormsAndAsymptotics) {
  EXPECT_NEAR(riccati_exterior_logderiv(Order::make(1.0), 2.0), -7.0 / 6.0, 1e-13);
  EXPECT_NEAR(riccati_exterior_logderiv(Order::make(1.0), 1e3), -1.0, 1e-5);
  EXPECT_NEAR(riccati_exterior_logderiv(Order::make(1.0), 1e3), -1.0 - 1.0 / (1e3 * 1001.0), 1e-13);
  for (double y : {1e-3, 0.5, 4.0, 80.0}) {
    EXPECT_DOUBLE_EQ(riccati_exterior_logderiv(Order::make(0.0), y), -1.0);
    EXPECT_DOUBLE_EQ(riccati_exterior_logderiv(Order::make(-1.0), y), -1.0);
  }
}

TEST(ExteriorLogDeriv, AgreesWithStandardLibrary) {
  for (double nu : {-0.5, 0.5, 1.0, 1.5, 2.5, 4.0}) {
    const Order o = Order::make(nu);
    for (double y : {1e-3, 0.05, 0.9, 1.99, 2.01, 3.0, 10.0, 50.0, 300.0}) {
      const double ref = std_exterior_logderiv(o.mu(), y);
      const double got = riccati_exterior_logderiv(o, y);
      EXPECT_NEAR(got, ref, 1e-11 * std::max(1.0, std::abs(ref))) << "nu=" << nu << " y=" << y;
      if (nu >= 0.0) {
        EXPECT_LT(got, 0.0);
      }
    }
  }
}

TEST(BesselK, RatioMatchesStandardLibraryAcrossTheSeriesSwitch) {
  for (double y : {1e-4, 0.01, 0.5, 1.0, 1.999, 2.0, 2.001, 5.0, 30.0, 400.0}) {
    const double ref = std::cyl_bessel_k(1.0, y) / std::cyl_bessel_k(0.0, y);
    EXPECT_NEAR(bessel_k1_over_k0(y), ref, 1e-13 * ref) << y;
  }
}

TEST(InteriorZero, KnownZeros) {
  EXPECT_EQ(interior_zero(Order::make(0.0), 0), 0.0);
  for (int k = 1; k <= 5; ++k) {
    EXPECT_NEAR(interior_zero(Order::make(0.0), k), k * kPi, 1e-12);
    EXPECT_NEAR(interior_zero(Order::make(-1.0), k), (k - 0.5) * kPi, 1e-12);
  }
  EXPECT_NEAR(interior_zero(Order::make(1.0), 1), 4.493409457909064, 1e-11);
  EXPECT_NEAR(interior_zero(Order::make(-0.5), 1), 2.404825557695773, 1e-11);
  EXPECT_NEAR(interior_zero(Order::make(0.5), 1), 3.831705970207512, 1e-11);
  EXPECT_NEAR(interior_zero(Order::make(0.5), 2), 7.015586669815619, 1e-11);
}

TEST(InteriorZero, ZerosAreRootsOfTheValue) {
  for (double nu : {-0.5, 1.5, 3.0}) {
    const Order o = Order::make(nu);
    double prev = 0.0;
    for (int k = 1; k <= 6; ++k) {
      const double z = interior_zero(o, k);
      EXPECT_GT(z, prev);
      EXPECT_NEAR(std::cyl_bessel_j(o.mu(), z), 0.0, 1e-12);
      prev = z;
    }
  }
}
