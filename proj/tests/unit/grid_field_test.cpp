#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "hnls/errors.hpp"
#include "hnls/field.hpp"
#include "hnls/grid.hpp"
#include "test_util.hpp"

using namespace hnls;
using hnls::testing::kPi;

TEST(TorusGrid, RejectsSizesThatAreNotPowersOfTwo) {
  EXPECT_THROW(TorusGrid(8), InvalidParameter);
  EXPECT_THROW(TorusGrid(48), InvalidParameter);
  EXPECT_NO_THROW(TorusGrid(16));
}

TEST(TorusGrid, SpacingAndFrequencies) {
  const TorusGrid g(16);
  EXPECT_DOUBLE_EQ(g.dx() * 16, 2 * kPi);
  const auto f = g.frequencies();
  ASSERT_EQ(f.size(), 16u);
  EXPECT_EQ(f.front(), -8.0);
  EXPECT_EQ(f.back(), 7.0);
  EXPECT_EQ(g.wavenumber(0), 0.0);
  EXPECT_EQ(g.wavenumber(7), 7.0);
  EXPECT_EQ(g.wavenumber(8), -8.0);
  EXPECT_EQ(g.wavenumber(15), -1.0);
}

TEST(LineGrid, Geometry) {
  const LineGrid g(1024, 8);
  EXPECT_DOUBLE_EQ(g.half_length(), 8 * kPi);
  EXPECT_DOUBLE_EQ(g.dx(), 16 * kPi / 1024);
  EXPECT_DOUBLE_EQ(g.x(0), -8 * kPi);
  EXPECT_DOUBLE_EQ(g.dxi(), 1.0 / 8.0);
  const auto f = g.frequencies();
  EXPECT_DOUBLE_EQ(f.front(), -512.0 / 8.0);
  EXPECT_DOUBLE_EQ(f[513], 1.0 / 8.0);
  EXPECT_THROW(LineGrid(1024, 1), InvalidParameter);
  EXPECT_THROW(LineGrid(1000, 4), InvalidParameter);
}

TEST(LineGrid, CommensurabilityNeedsTwoPointsPerTorusPointPerPeriod) {
  EXPECT_NO_THROW(require_commensurate(TorusGrid(64), LineGrid(1024, 8)));
  EXPECT_THROW(require_commensurate(TorusGrid(128), LineGrid(1024, 8)), GridMismatch);
}

TEST(ComplexField, RejectsNonFiniteSamples) {
  const TorusGrid g(16);
  std::vector<Complex> v(16, 1.0);
  v[3] = Complex(std::numeric_limits<double>::quiet_NaN(), 0.0);
  EXPECT_THROW(ComplexField(g, v), InvalidField);
  v[3] = Complex(0.0, std::numeric_limits<double>::infinity());
  EXPECT_THROW(ComplexField(g, v), InvalidField);
}

TEST(ComplexField, RejectsWrongLength) {
  EXPECT_THROW(ComplexField(TorusGrid(16), std::vector<Complex>(15)), InvalidField);
}

TEST(ComplexField, ArithmeticRequiresMatchingGrids) {
  const auto a = ComplexField::constant(TorusGrid(16), 1.0);
  const auto b = ComplexField::constant(TorusGrid(32), 1.0);
  EXPECT_THROW(a + b, GridMismatch);
  const auto c = a + a;
  EXPECT_EQ(c[5], Complex(2.0));
  const auto d = Complex(0.0, 1.0) * c;
  EXPECT_EQ(d[0], Complex(0.0, 2.0));
  EXPECT_EQ((c - a)[7], Complex(1.0));
}

TEST(ComplexField, ScalingByNonFiniteThrows) {
  auto a = ComplexField::constant(TorusGrid(16), 1.0);
  EXPECT_THROW(a *= std::numeric_limits<double>::infinity(), InvalidField);
}

TEST(ComplexField, SampleUsesGridPoints) {
  const LineGrid g(64, 2);
  const auto f = ComplexField::sample(g, [](double x) { return Complex(x, 0.0); });
  EXPECT_DOUBLE_EQ(f[0].real(), -2 * kPi);
  EXPECT_DOUBLE_EQ(f[32].real(), 0.0);
}
