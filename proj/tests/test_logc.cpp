#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "bakerlab/logc.hpp"

using namespace bakerlab;

TEST(LogComplex, FromCartesianBasics) {
  auto one = from_cartesian(1.0, 0.0);
  ASSERT_FALSE(one.is_zero());
  EXPECT_EQ(one.polar().logmod, 0.0);
  EXPECT_EQ(one.polar().arg, 0.0);

  EXPECT_TRUE(from_cartesian(0.0, 0.0).is_zero());

  auto minus_e = from_cartesian(-kE, 0.0);
  EXPECT_NEAR(minus_e.polar().logmod, 1.0, 1e-15);
  EXPECT_EQ(minus_e.polar().arg, kPi);
}

TEST(LogComplex, FromCartesianDoesNotOverflow) {
  auto big = from_cartesian(1e308, 1e308);
  EXPECT_NEAR(big.polar().logmod, std::log(1e308) + 0.5 * std::log(2.0), 1e-12);
  EXPECT_NEAR(big.polar().arg, kPi / 4, 1e-15);
}

TEST(LogComplex, ToCartesian) {
  auto i = to_cartesian(LogComplex{0.0, kPi / 2});
  ASSERT_TRUE(std::holds_alternative<Cartesian>(i));
  EXPECT_EQ(std::get<Cartesian>(i), Cartesian(0.0, 1.0));

  auto huge = to_cartesian(LogComplex{1e16, 0.0});
  ASSERT_TRUE(std::holds_alternative<OverflowSignal>(huge));
  EXPECT_EQ(std::get<OverflowSignal>(huge).value, (LogComplex{1e16, 0.0}));

  auto zero = to_cartesian(LogValue::zero());
  EXPECT_EQ(std::get<Cartesian>(zero), Cartesian(0.0, 0.0));
}

TEST(LogComplex, Mul) {
  LogValue i = LogComplex{0.0, kPi / 2};
  EXPECT_EQ(mul(i, i), LogValue(LogComplex{0.0, kPi}));
  EXPECT_TRUE(mul(LogValue::zero(), i).is_zero());
  EXPECT_TRUE(mul(i, LogValue::zero()).is_zero());
  auto p = mul(LogComplex{1.0, 0.1}, LogComplex{2.0, -0.2});
  EXPECT_EQ(p.polar().logmod, 3.0);
  EXPECT_NEAR(p.polar().arg, -0.1, 1e-16);
}

TEST(LogComplex, ZeroComparesEqualOnlyToZero) {
  EXPECT_EQ(LogValue::zero(), LogValue::zero());
  EXPECT_NE(LogValue::zero(), LogValue::one());
  EXPECT_NE(LogValue(LogComplex{-800.0, 0.0}), LogValue::zero());
}

TEST(LogComplex, AddOneSpecialValues) {
  EXPECT_EQ(add_one(LogValue::zero()), LogValue::one());
  EXPECT_TRUE(add_one(LogComplex{0.0, kPi}).is_zero());
  auto tiny = add_one(LogComplex{-100.0, 0.0});
  // ln(1 + e^-100) = 3.720075976020835963e-44 (200-bit oracle)
  EXPECT_NEAR(tiny.polar().logmod / 3.720075976020835963e-44, 1.0, 1e-15);
  EXPECT_EQ(tiny.polar().arg, 0.0);
}

TEST(LogComplex, AddOneLargeRegime) {
  // 1 + e^{60 + iπ/3} = e^{60 + iπ/3} (1 + e^{-60 - iπ/3})
  auto v = add_one(LogComplex{60.0, kPi / 3});
  EXPECT_NEAR(v.polar().logmod, 60.0, 1e-14);
  EXPECT_NEAR(v.polar().arg, kPi / 3, 1e-15);
}

TEST(LogComplex, PowInt) {
  EXPECT_EQ(pow_int(LogComplex{0.0, kPi / 2}, 2), LogValue(LogComplex{0.0, kPi}));
  auto p = pow_int(LogComplex{std::log(2.0), 0.0}, 10);
  EXPECT_NEAR(p.polar().logmod, 10 * std::log(2.0), 1e-15);
  EXPECT_EQ(p.polar().arg, 0.0);
  EXPECT_EQ(pow_int(LogValue::zero(), 0), LogValue::one());
  EXPECT_TRUE(pow_int(LogValue::zero(), 3).is_zero());
  EXPECT_THROW(pow_int(LogValue::one(), -1), std::invalid_argument);
}

TEST(LogComplex, ExpOf) {
  EXPECT_EQ(exp_of({0.0, 0.0}), (LogComplex{0.0, 0.0}));
  EXPECT_EQ(exp_of({1.0, 0.0}), (LogComplex{1.0, 0.0}));
  EXPECT_EQ(exp_of({3.8e16, 0.0}), (LogComplex{3.8e16, 0.0}));
  EXPECT_NEAR(exp_of({0.0, 3 * kPi}).arg, kPi, 1e-15);
}

TEST(LogComplex, NormalizeArgRange) {
  EXPECT_EQ(normalize_arg(-kPi), kPi);
  EXPECT_EQ(normalize_arg(kPi), kPi);
  EXPECT_NEAR(normalize_arg(kTwoPi + 0.5), 0.5, 1e-15);
  EXPECT_NEAR(normalize_arg(-kTwoPi - 0.5), -0.5, 1e-15);
}

// --- properties --------------------------------------------------------------

TEST(LogComplexProperty, ArgAlwaysInHalfOpenInterval) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ang(-50.0, 50.0);
  std::uniform_real_distribution<double> lm(-100.0, 100.0);
  std::uniform_int_distribution<std::int64_t> deg(0, 4'000'000'000LL);
  for (int i = 0; i < 20000; ++i) {
    const LogComplex a{lm(rng), normalize_arg(ang(rng))};
    const LogComplex b{lm(rng), normalize_arg(ang(rng))};
    for (const LogValue& v : {LogValue(a), mul(a, b), add_one(a), pow_int(a, deg(rng))}) {
      if (v.is_zero()) continue;
      ASSERT_GT(v.polar().arg, -kPi);
      ASSERT_LE(v.polar().arg, kPi);
    }
  }
}

TEST(LogComplexProperty, CartesianRoundTrip) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> mant(-1.0, 1.0);
  std::uniform_int_distribution<int> expo(-300, 300);
  const double ulp = std::numeric_limits<double>::epsilon();
  for (int i = 0; i < 20000; ++i) {
    const int e = expo(rng);
    const double x = std::ldexp(mant(rng), e);
    const double y = std::ldexp(mant(rng), e + expo(rng) % 4);
    const auto back = std::get<Cartesian>(to_cartesian(from_cartesian(x, y)));
    const double scale = std::hypot(x, y);
    // storing ln|z| costs |ln|z|| ulps of relative accuracy
    const double lm = std::fabs(std::log(scale));
    ASSERT_LE(std::abs(back - Cartesian(x, y)), (4 + lm) * ulp * scale) << x << " " << y;
  }
}

TEST(LogComplexProperty, MulAssociative) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> lm(-1000.0, 1000.0);
  std::uniform_real_distribution<double> ang(-kPi, kPi);
  const double ulp = std::numeric_limits<double>::epsilon();
  for (int i = 0; i < 10000; ++i) {
    const LogValue a = LogComplex{lm(rng), ang(rng)};
    const LogValue b = LogComplex{lm(rng), ang(rng)};
    const LogValue c = LogComplex{lm(rng), ang(rng)};
    const LogComplex l = mul(mul(a, b), c).polar();
    const LogComplex r = mul(a, mul(b, c)).polar();
    ASSERT_LE(std::fabs(l.logmod - r.logmod), 4 * ulp * 3000.0);
    ASSERT_LE(std::fabs(normalize_arg(l.arg - r.arg)), 1e-12);
  }
}

TEST(LogComplexProperty, PowIntMatchesRepeatedMul) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> lm(-0.01, 0.01);
  std::uniform_real_distribution<double> ang(-kPi, kPi);
  for (int trial = 0; trial < 40; ++trial) {
    const LogValue v = LogComplex{lm(rng), ang(rng)};
    LogValue acc = LogValue::one();
    for (std::int64_t n = 1; n <= 10000; ++n) {
      acc = mul(acc, v);
      if (n % 97 != 0 && n != 10000) continue;
      const LogComplex p = pow_int(v, n).polar();
      ASSERT_LE(std::fabs(normalize_arg(p.arg - acc.polar().arg)), 1e-9) << n;
      // the running product accumulates n roundings
      const double eps = std::numeric_limits<double>::epsilon();
      ASSERT_NEAR(p.logmod, acc.polar().logmod, 4 * n * eps * (1 + std::fabs(p.logmod)));
    }
  }
}
