#include <gtest/gtest.h>

#include <random>

#include "ctp/number.hpp"

namespace ctp {
namespace {

TEST(Number, ParsesFractionsAndDecimals) {
  EXPECT_EQ(Number::parse("3/6"), Number::fraction(1, 2));
  EXPECT_EQ(Number::parse("0.25"), Number::fraction(1, 4));
  EXPECT_EQ(Number::parse("-7"), Number(-7));
  EXPECT_THROW(Number::parse("abc"), std::invalid_argument);
  EXPECT_THROW(Number::parse("1/0"), std::invalid_argument);
}

TEST(Number, RendersExactFractions) {
  EXPECT_EQ(Number(2).to_string(), "2/1");
  EXPECT_EQ(Number::fraction(6, 4).to_string(), "3/2");
  EXPECT_EQ(Number::golden17().to_string(), "3/2+1/2*sqrt(17)");
  EXPECT_EQ(Number::fraction(1, 3).to_decimal(), "0.333333333333");
}

TEST(Number, SurdFormRoundTrips) {
  Number g = Number::golden17();
  EXPECT_EQ(Number::parse(g.to_string()), g);
  EXPECT_EQ(Number::parse("3/2+1/2*sqrt17"), g);
}

TEST(Number, GoldenRatioSatisfiesItsQuadratic) {
  // (3 + sqrt17)/2 is the positive root of x^2 - 3x - 2.
  Number g = Number::golden17();
  EXPECT_TRUE((g * g - Number(3) * g - Number(2)).is_zero());
  EXPECT_NEAR(g.to_double(), 3.5615528128088303, 1e-12);
}

TEST(Number, OrderingAgreesWithDoublesOnRandomSurds) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<long> coef(-40, 40);
  std::uniform_int_distribution<long> den(1, 9);
  for (int i = 0; i < 2000; ++i) {
    Number x(mpq_class(coef(rng), den(rng)), mpq_class(coef(rng), den(rng)));
    Number y(mpq_class(coef(rng), den(rng)), mpq_class(coef(rng), den(rng)));
    double dx = x.to_double();
    double dy = y.to_double();
    if (std::abs(dx - dy) < 1e-9) continue;
    EXPECT_EQ(x < y, dx < dy) << x << " vs " << y;
  }
}

TEST(Number, FieldOperationsInvert) {
  Number x(mpq_class(5, 3), mpq_class(-2, 7));
  Number y(mpq_class(1, 4), mpq_class(3, 5));
  EXPECT_EQ((x * y) / y, x);
  EXPECT_EQ((x + y) - y, x);
  EXPECT_EQ(x / x, Number(1));
  EXPECT_EQ(-(-x), x);
}

TEST(Number, SignOfSurdsNearZero) {
  // sqrt17 = 4.12310562...
  EXPECT_EQ(Number(mpq_class(33, 8), mpq_class(-1)).sign(), 1);
  EXPECT_EQ(Number(mpq_class(4123, 1000), mpq_class(-1)).sign(), -1);
  EXPECT_EQ(Number(mpq_class(-4124, 1000), mpq_class(1)).sign(), -1);
  EXPECT_EQ(Number(0).sign(), 0);
}

TEST(Number, EqualValuesHashEqually) {
  EXPECT_EQ(Number::fraction(2, 4).hash(), Number::fraction(1, 2).hash());
}

}  // namespace
}  // namespace ctp
