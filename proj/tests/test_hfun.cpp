#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "bakerlab/hfun.hpp"

using namespace bakerlab;

namespace {
const ParamSeq kDoubling = make_toy("doubling");
}

TEST(EvalH, KnownValues) {
  EXPECT_NEAR(eval_h({1.0, 0.0}, kDoubling).cartesian->real(), 1.2548828872968442739, 1e-14);
  EXPECT_NEAR(eval_h({kE, 0.0}, kDoubling).cartesian->real(), 3.4551252733910225333, 1e-13);
  EXPECT_NEAR(eval_h({5.0, 0.0}, kDoubling).cartesian->real(), 25.531112527078324835, 1e-12);
  EXPECT_EQ(eval_h({0.0, 0.0}, kDoubling).value, LogValue::one());
}

TEST(EvalH, ExactZeroAtTwoI) {
  const EvalResult h = eval_h({0.0, 2.0}, kDoubling);
  EXPECT_TRUE(h.value.is_zero());
  EXPECT_EQ(*h.cartesian, Cartesian(0.0, 0.0));
}

TEST(EvalH, ConjugateSymmetry) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int i = 0; i < 2000; ++i) {
    const Cartesian z{u(rng), u(rng)};
    const LogValue a = eval_h(z, kDoubling).value;
    const LogValue b = eval_h(std::conj(z), kDoubling).value;
    ASSERT_EQ(a.is_zero(), b.is_zero());
    if (a.is_zero()) continue;
    ASSERT_NEAR(a.polar().logmod, b.polar().logmod, 1e-13 * (1 + std::fabs(a.polar().logmod)));
    ASSERT_LE(std::fabs(normalize_arg(a.polar().arg + b.polar().arg)), 1e-12);
  }
}

TEST(EvalH, FarOutsideStaysInLogForm) {
  const EvalResult h = eval_h({1e6, 0.0}, kDoubling);
  ASSERT_FALSE(h.value.is_zero());
  // dominated by prod (z/r_k)^{n_k}
  double expect = 0.0;
  for (std::size_t k = 1; k <= 4; ++k) expect += kDoubling.n(k) * std::log(1e6 / kDoubling.r(k));
  EXPECT_NEAR(h.value.polar().logmod, expect, 1e-9 * expect);
  EXPECT_TRUE(h.unbounded_tail());
}

TEST(EvalH, TruncationBound) {
  EXPECT_DOUBLE_EQ(truncation_bound({1.0, 0.0}, kDoubling, 3), std::expm1(0.25));
  EXPECT_TRUE(std::isinf(truncation_bound({5.0, 0.0}, kDoubling, 3)));
  EvalOptions two;
  two.factors = 2;
  EXPECT_DOUBLE_EQ(eval_h({1.0, 0.0}, kDoubling, two).trunc_bound, std::expm1(0.5));
  two.factors = 5;
  EXPECT_THROW(eval_h({1.0, 0.0}, kDoubling, two), std::out_of_range);
}

TEST(EvalH, TruncationBoundHoldsAgainstFullProduct) {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (std::size_t J = 1; J < 4; ++J) {
    EvalOptions opt;
    opt.factors = J;
    for (int i = 0; i < 1000; ++i) {
      const Cartesian z = std::polar(kDoubling.r(J) / 2 * std::sqrt(u(rng)), kTwoPi * u(rng));
      const EvalResult part = eval_h(z, kDoubling, opt);
      const Cartesian full = *eval_h(z, kDoubling).cartesian;
      if (part.value.is_zero()) continue;
      ASSERT_LE(std::abs(full - *part.cartesian), part.trunc_bound * std::abs(*part.cartesian)) << J;
    }
  }
}

TEST(EvalF, ValuesAndRegimes) {
  const EvalResult f = eval_f({kE, 0.0}, kDoubling);
  ASSERT_TRUE(f.cartesian);
  EXPECT_NEAR(f.cartesian->real(), 34.380536700334915497, 1e-11);
  EXPECT_EQ(f.regime, Regime::Representable);

  const EvalResult big = eval_f(*f.cartesian, kDoubling);
  EXPECT_EQ(big.regime, Regime::Escaped);
  EXPECT_FALSE(big.cartesian);
  EXPECT_NEAR(big.value.polar().logmod / 3.8903849176734242e16, 1.0, 1e-12);
  ASSERT_TRUE(big.perturbation_log);
  EXPECT_LT(*big.perturbation_log, -1e16);
}

TEST(EvalF, ZerosTranslateExactly) {
  for (std::size_t k = 1; k <= 4; ++k)
    for (std::int64_t nu = 0; nu < kDoubling.n(k); ++nu) {
      const Cartesian a = std::polar(kDoubling.r(k), kPi * (2.0 * nu + 1) / kDoubling.n(k));
      const EvalResult f = eval_f(a, kDoubling);
      ASSERT_TRUE(f.cartesian);
      EXPECT_EQ(f.cartesian->real(), a.real() + 1.0) << k << " " << nu;
      EXPECT_EQ(f.cartesian->imag(), a.imag()) << k << " " << nu;
    }
}

TEST(EvalF, VeryNegativeRealPartLeavesZUnchanged) {
  // h(10i) = (1 - 25)(1 + 10^4/256)(1 + 1.25^8)(1 + 0.625^16) is about -6.7e3
  const Cartesian z{0.0, 10.0};
  const EvalResult h = eval_h(z, kDoubling);
  ASSERT_TRUE(h.cartesian);
  EXPECT_LT(h.cartesian->real(), -6000.0);
  EXPECT_EQ(*eval_f(z, kDoubling).cartesian, z);
}

TEST(Theta, QuarterTurn) { EXPECT_NEAR(theta(0.25), 0.69004195489378594971, 1e-15); }

TEST(Theta, RangeAndResidual) {
  for (int i = 0; i <= 10000; ++i) {
    const double phi = i / 10000.0;
    const double t = theta(phi);
    ASSERT_GE(t, 0.0);
    ASSERT_LT(t, 1.0);
    const Cartesian pv = rotated_probe_factor(phi, t);
    ASSERT_LE(std::fabs(pv.imag()), 1e-12);
    ASSERT_GE(pv.real(), kE - 1.0 - 1e-12);
    ASSERT_LE(pv.real(), kE + 1.0 + 1e-12);
  }
  EXPECT_EQ(theta(0.0), 0.0);
  EXPECT_NEAR(theta(0.5), 0.5, 1e-15);
}

TEST(ProbePoint, GeometryOnCircles) {
  const DerivedParams d = derive(kDoubling);
  for (std::size_t k = 2; k <= 4; ++k)
    for (std::int64_t nu = 0; nu < kDoubling.n(k); ++nu) {
      const ProbePoint pp = probe_point(k, nu, kDoubling, d);
      EXPECT_NEAR(std::abs(pp.b), d.s_at(k), 1e-13 * d.s_at(k));
      EXPECT_NEAR(std::abs(pp.a), kDoubling.r(k), 1e-13 * kDoubling.r(k));
      EXPECT_TRUE(eval_h(pp.a, kDoubling).value.is_zero());
      EXPECT_GE(pp.p, kE - 1.0);
    }
  const ProbePoint z0 = probe_point(3, 0, kDoubling, d);
  EXPECT_EQ(z0.theta, 0.0);
  EXPECT_EQ(z0.b, Cartesian(9.0, 0.0));
  EXPECT_THROW(probe_point(1, 0, kDoubling), std::out_of_range);
  EXPECT_THROW(probe_point(2, 4, kDoubling), std::out_of_range);
}

TEST(ProbePoint, HugeDegreeKeepsPhaseExact) {
  const ParamSeq p = make_toy("paper2");
  const ProbePoint pp = probe_point(2, 2'843'999'999, p);
  // phi = nu m_2 / n_2 mod 1 with m_2 = 1
  EXPECT_NEAR(pp.phi, 2'843'999'999.0 / 2'844'000'000.0, 1e-16);
}

TEST(Quadrature, Polynomials) {
  const auto r = integrate_adaptive([](double x) { return Cartesian(x * x * x, 0.0); }, 0.0, 2.0, 1e-14);
  EXPECT_NEAR(r.value.real(), 4.0, 1e-14);
  const auto s = integrate_adaptive([](double x) { return Cartesian(std::cos(x), std::sin(x)); }, 0.0, kPi, 1e-13);
  EXPECT_NEAR(s.value.real(), 0.0, 1e-13);
  EXPECT_NEAR(s.value.imag(), 2.0, 1e-13);
}

TEST(Quadrature, NonConvergenceReported) {
  EXPECT_THROW(integrate_adaptive([](double x) { return Cartesian(1.0 / std::sqrt(std::fabs(x - 0.3)), 0.0); }, 0.0,
                                  1.0, 1e-300, 12),
               NonConvergence);
}

TEST(GFunction, ValueAtOne) {
  const Cartesian g = eval_g({1.0, 0.0}, kDoubling, 1e-12);
  EXPECT_NEAR(g.real(), 0.71240485121370045712, 1e-11);
  EXPECT_NEAR(g.imag(), 0.0, 1e-15);
  EXPECT_EQ(eval_g({0.0, 0.0}, kDoubling, 1e-10), Cartesian(1.0, 0.0));
  EXPECT_NEAR(integrate_exp_neg_h({0.0, 0.0}, {1.0, 0.0}, kDoubling, 1e-13).value.real(), 0.3391089179130890094,
              1e-12);
}

TEST(GFunction, PathIndependence) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 20; ++i) {
    const Cartesian z{u(rng), u(rng)}, w1{u(rng), u(rng)}, w2{u(rng), u(rng)};
    const Cartesian path[] = {{0.0, 0.0}, w1, w2, z};
    EXPECT_LE(std::abs(eval_g(z, kDoubling, 1e-11) - eval_g_path(path, kDoubling, 1e-11)), 2e-10);
  }
  const Cartesian bad[] = {{1.0, 0.0}, {2.0, 0.0}};
  EXPECT_THROW(eval_g_path(bad, kDoubling, 1e-10), std::invalid_argument);
}

TEST(GFunction, NewtonIdentity) {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    const Cartesian z = std::polar(std::sqrt(u(rng)), kTwoPi * u(rng));
    const NewtonCheck c = newton_check(z, kDoubling, 1e-3);
    EXPECT_LE(c.residual, 1e-6) << z;
    // g'/g = -e^{-h}
    const Cartesian expected = -std::exp(-*eval_h(z, kDoubling).cartesian);
    EXPECT_LE(std::abs(c.g_prime / c.g - expected), 1e-5 * std::abs(expected));
  }
  EXPECT_THROW(newton_residual({0.5, 0.0}, kDoubling, 0.0), std::invalid_argument);
}
