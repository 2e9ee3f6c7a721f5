#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <thread>
#include <vector>

#include "chbox/errors.hpp"
#include "chbox/pt.hpp"
#include "oracles.hpp"

using namespace chbox;
using std::numbers::pi;

TEST(SphericalBessel, SmallArgumentLimits) {
  EXPECT_NEAR(spherical_bessel(0, 1e-12), 1.0, 1e-15);
  EXPECT_EQ(spherical_bessel(0, 0.0), 1.0);
  EXPECT_EQ(spherical_bessel(3, 0.0), 0.0);
  EXPECT_NEAR(spherical_bessel(1, 1e-4), 1e-4 / 3.0 * (1.0 - 1e-8 / 10.0), 1e-19);
}

TEST(SphericalBessel, MatchesClosedForms) {
  for (double x : {0.01, 0.5, 1.0, 3.7, 10.0, 42.0}) {
    const double s = std::sin(x), c = std::cos(x);
    EXPECT_NEAR(spherical_bessel(0, x), s / x, 1e-14);
    EXPECT_NEAR(spherical_bessel(1, x), oracle::j1_direct(x), 1e-13);
    const double j2 = (3.0 / (x * x) - 1.0) * s / x - 3.0 * c / (x * x);
    EXPECT_NEAR(spherical_bessel(2, x), j2, 1e-11 * std::max(1.0, 1.0 / (x * x)));
  }
}

TEST(SphericalBessel, HighOrderSmallArgumentIsAccurate) {
  // j_10(x) ~ x^10 / 21!! (1 - x²/46 + x⁴/4600) near zero, where upward
  // recurrence would lose every digit.
  const double x = 0.3;
  double dfact = 1.0;
  for (int k = 21; k > 1; k -= 2) dfact *= k;
  const double leading = std::pow(x, 10) / dfact *
                         (1.0 - x * x / (2.0 * 23.0) + std::pow(x, 4) / (8.0 * 23.0 * 25.0));
  EXPECT_NEAR(spherical_bessel(10, x) / leading, 1.0, 1e-6);
}

TEST(SphericalBessel, OrderOutOfRange) {
  EXPECT_THROW(spherical_bessel(-1, 1.0), InvalidArgument);
  EXPECT_THROW(spherical_bessel(kMaxBesselOrder + 1, 1.0), InvalidArgument);
  EXPECT_THROW(spherical_bessel(0, -1.0), InvalidArgument);
}

TEST(BesselZero, OrderZeroIsMultipleOfPi) {
  for (int n = 1; n <= 10; ++n) EXPECT_NEAR(bessel_zero(0, n), n * pi, 1e-12 * n * pi);
}

TEST(BesselZero, FirstZeroOfOrderOneMatchesBisection) {
  EXPECT_NEAR(bessel_zero(1, 1), oracle::j1_first_zero_bisection(), 1e-10);
  EXPECT_NEAR(bessel_zero(1, 1), 4.493409457909064, 1e-12);
}

TEST(BesselZero, ZerosInterlaceAndVanish) {
  for (int l = 0; l < kMaxBesselOrder; ++l) {
    for (int n = 1; n <= 5; ++n) {
      const double x = bessel_zero(l, n);
      EXPECT_NEAR(spherical_bessel(l, x), 0.0, 1e-13) << l << "," << n;
      EXPECT_LT(x, bessel_zero(l + 1, n));
      EXPECT_LT(bessel_zero(l + 1, n), bessel_zero(l, n + 1));
    }
  }
}

TEST(BesselZero, InvalidArguments) {
  EXPECT_THROW(bessel_zero(0, 0), InvalidArgument);
  EXPECT_THROW(bessel_zero(11, 1), InvalidArgument);
}

TEST(BesselZeroTable, ConcurrentReadersAgree) {
  const double want = bessel_zero(2, 3);
  std::vector<double> got(8, 0.0);
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < got.size(); ++t) {
      pool.emplace_back([&, t] { got[t] = BesselZeroTable::global()(2, 3); });
    }
  }
  for (double g : got) EXPECT_EQ(g, want);
}

TEST(ZeroOrder, UnitRadius) {
  const ZeroOrder z = zero_order(ModelParams(1.0));
  EXPECT_NEAR(z.T_e0, 4.93480, 1e-5);
  EXPECT_NEAR(z.T_n0, 0.00269, 1e-5);
  EXPECT_NEAR(z.E0, 4.93749, 1e-5);
  EXPECT_DOUBLE_EQ(z.E0, z.T_e0 + z.T_n0);
  EXPECT_NEAR(z.T_n0 / z.T_e0, 1.0 / kProtonMass, 1e-15);
}

TEST(ZeroOrder, SmallRadius) { EXPECT_NEAR(zero_order(ModelParams(0.1)).T_e0, 493.48022, 1e-5); }

TEST(ZeroOrder, InverseSquareScaling) {
  const double e1 = zero_order(ModelParams(1.0)).E0;
  for (double R : {0.1, 2.0, 10.0}) {
    EXPECT_NEAR(zero_order(ModelParams(R)).E0 * R * R / e1, 1.0, 1e-10);
  }
}

TEST(FirstOrderCoulomb, TabulatedValues) {
  EXPECT_NEAR(first_order_coulomb(1.0), -1.78607, 1e-5);
  EXPECT_NEAR(first_order_coulomb(0.1), -17.86073, 1e-4);
}

TEST(FirstOrderCoulomb, InverseRadiusScaling) {
  const double v1 = first_order_coulomb(1.0);
  for (double R : {0.1, 3.0, 10.0}) {
    EXPECT_NEAR(first_order_coulomb(R) * R / v1, 1.0, 1e-10);
  }
}

TEST(FirstOrderCoulomb, ConvergedInNodes) {
  EXPECT_NEAR(first_order_coulomb(1.0, 64), first_order_coulomb(1.0, 128), 1e-13);
}

TEST(PtGroundState, TabulatedRows) {
  EXPECT_NEAR(pt_ground_state(ModelParams(1.0)).E, 3.15142, 1e-5);
  const PtResult half = pt_ground_state(ModelParams(0.5));
  EXPECT_NEAR(half.E, 16.17781, 1e-5);
  EXPECT_NEAR(half.V, -3.57215, 1e-5);
  EXPECT_NEAR(pt_ground_state(ModelParams(0.3)).E, 48.90742, 1e-5);
}

TEST(PtGroundState, FieldsAreConsistent) {
  const PtResult p = pt_ground_state(ModelParams(0.7));
  EXPECT_DOUBLE_EQ(p.T, p.T_e + p.T_n);
  EXPECT_NEAR(p.E, p.T + p.V, 1e-12 * std::abs(p.E));
  EXPECT_FALSE(p.outside_validity);
  EXPECT_TRUE(pt_ground_state(ModelParams(1.5)).outside_validity);
}
