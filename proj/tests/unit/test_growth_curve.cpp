#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "growthfpt/growth_curve.hpp"
#include "oracles.hpp"

using namespace growthfpt;

TEST(Reparametrize, PstarCollapsesToInverseAn) {
  for (double p : {1.5, 1.0, 0.75, 2.0 / 3.0, 0.25}) {
    const ReparamCoeffs c = reparametrize(oracle::pstar(p));
    EXPECT_NEAR(c.alpha, std::exp(-0.5), 1e-15);
    EXPECT_NEAR(c.eta, 1.0 / 19.0, 1e-15) << "p=" << p;
  }
}

TEST(Reparametrize, ShiftedOrigin) {
  GrowthParams p = oracle::pstar(1.5);
  p.t0 = 1.0;
  const double expected = std::pow(1.0 / std::sqrt(19.0) - 0.25, 2.0);
  EXPECT_NEAR(reparametrize(p).eta, expected, 1e-15);
  EXPECT_NEAR(expected, 4.2371e-4, 1e-8);
  // curve through (t0, x0)
  EXPECT_NEAR(x_eval(p, 1.0), 1.0, 1e-12);
}

TEST(Reparametrize, RejectsInvalid) {
  GrowthParams p = oracle::pstar(2.5);
  try {
    (void)reparametrize(p);
    FAIL() << "expected InvalidParams";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::InvalidParams);
    EXPECT_NE(std::string(e.what()).find("p must satisfy"), std::string::npos);
  }
  p = oracle::pstar(1.5);
  p.x0 = 25.0;
  EXPECT_THROW((void)reparametrize(p), Error);
  p = oracle::pstar(1.5);
  p.gamma = -1.0;
  EXPECT_THROW((void)reparametrize(p), Error);
}

TEST(GrowthCurve, HandValues) {
  const GrowthCurve c(oracle::pstar(1.5));
  EXPECT_NEAR(c.g(0.0), 20.0 / 19.0, 1e-14);
  const double t = 4.0 / std::sqrt(19.0);
  EXPECT_NEAR(c.g(t), 1.0 / 19.0 + 0.25, 1e-14);
  EXPECT_NEAR(c.g(t), 0.302632, 1e-6);
  EXPECT_NEAR(c.x(t), 3.478261, 1e-6);
  EXPECT_NEAR(c.h(0.0), 0.5 * std::sqrt(20.0) * std::pow(0.95, 1.5), 1e-13);
  EXPECT_NEAR(c.h(0.0), 2.070477, 1e-6);
  EXPECT_NEAR(c.h_integral(0.0, t), std::log((20.0 / 19.0) / 0.302632), 1e-5);
  EXPECT_NEAR(c.h_integral(0.0, t), 1.246532, 1e-6);
  EXPECT_EQ(c.h_integral(1.0, 1.0), 0.0);
  EXPECT_NEAR(c.g(1e6), 1.0 / 19.0, 1e-12);
  EXPECT_NEAR(c.x(1e6), 20.0, 1e-9);
  EXPECT_LT(std::abs(c.h(1e6)), 1e-12);
}

TEST(GrowthCurve, MatchesHandFormulaOnGrid) {
  const GrowthCurve c(oracle::pstar(1.5));
  for (double t = 0.0; t < 40.0; t += 0.37) EXPECT_NEAR(c.g(t), oracle::g_pstar(t), 1e-14 * oracle::g_pstar(t));
}

TEST(GrowthCurve, StartsAtX0ForEveryP) {
  for (double p : {1.5, 1.0, 0.75, 2.0 / 3.0, 0.25}) EXPECT_DOUBLE_EQ(GrowthCurve(oracle::pstar(p)).x(0.0), 1.0);
}

TEST(GrowthCurve, LogisticLimitBranches) {
  // p = 1 is the Richards curve k / (1 + A e^{-gamma n t})^{1/n}
  auto logistic = [](double t) { return 20.0 / (1.0 + 19.0 * std::exp(-0.5 * t)); };
  for (double dp : {0.0, 1e-9, -1e-9, 1e-6, -1e-6, 1e-4}) {
    const GrowthCurve c(oracle::pstar(1.0 + dp));
    for (double t : {0.5, 3.0, 10.0, 30.0}) {
      const double tol = dp == 0.0 ? 1e-13 : 50.0 * std::abs(dp);
      EXPECT_NEAR(c.x(t) / logistic(t), 1.0, tol) << "dp=" << dp << " t=" << t;
    }
  }
}

TEST(GrowthCurve, HazardMatchesFiniteDifference) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int done = 0;
  while (done < 50) {
    GrowthParams p;
    p.n = 0.5 + 2.0 * u(rng);
    p.gamma = 0.2 + u(rng);
    p.k = 10.0 + 20.0 * u(rng);
    p.x0 = p.k * (0.05 + 0.5 * u(rng));
    p.t0 = 0.0;
    p.p = 0.3 + (0.6 + 1.0 / p.n) * u(rng);
    const GrowthCurve c(p);
    const double end = std::isfinite(c.t_star()) ? 0.9 * c.t_star() : 20.0;
    const double t = 0.05 * end + 0.9 * end * u(rng);
    const double d = 1e-6 * std::max(1.0, t);
    const double fd = -(c.log_g(t + d) - c.log_g(t - d)) / (2.0 * d);
    EXPECT_NEAR(c.h(t), fd, 1e-6 * std::max(1.0, std::abs(fd)));
    EXPECT_NEAR(std::exp(c.h_integral(0.0, t)), c.x(t) / p.x0, 1e-8 * c.x(t));
    ++done;
  }
}

TEST(Regime, ReferenceShapes) {
  EXPECT_EQ(classify_regime(oracle::pstar(1.5)), CurveRegime::SigmoidSaturating);
  EXPECT_EQ(classify_regime(oracle::pstar(1.0)), CurveRegime::SigmoidSaturating);
  EXPECT_EQ(classify_regime(oracle::pstar(0.75)), CurveRegime::PlateauThenDecay);
  EXPECT_EQ(classify_regime(oracle::pstar(2.0 / 3.0)), CurveRegime::PlateauThenGrowth);
  EXPECT_EQ(classify_regime(oracle::pstar(0.25)), CurveRegime::FiniteTimeCeiling);
}

TEST(DomainEnd, CeilingTime) {
  EXPECT_FALSE(domain_end(oracle::pstar(1.5)).finite());
  EXPECT_FALSE(domain_end(oracle::pstar(0.75)).finite());
  const double ts = domain_end(oracle::pstar(0.25)).t_star;
  EXPECT_NEAR(ts, 1.0 / (std::pow(19.0, -0.75) * 0.5 * 0.75), 1e-12);
  EXPECT_NEAR(ts, 24.267, 1e-3);
  const GrowthCurve c(oracle::pstar(0.25));
  EXPECT_NEAR(c.gn(ts * (1.0 - 1e-12)), 1.0 / 19.0, 1e-9);
  EXPECT_NEAR(c.x(ts * (1.0 - 1e-12)), 20.0, 1e-6);
  EXPECT_THROW((void)c.x(ts + 1.0), Error);
}

TEST(DomainEnd, OddIntegerExponentBlowsUp) {
  // 1/(1-p) = 3: after the plateau the bracket is negative and g reaches 0
  const GrowthCurve c(oracle::pstar(2.0 / 3.0));
  ASSERT_TRUE(std::isfinite(c.t_star()));
  EXPECT_GT(c.x(0.999 * c.t_star()), 100.0);
  EXPECT_THROW((void)c.x(40.0), Error);
}

TEST(Regime, Behaviours) {
  const GrowthCurve sig(oracle::pstar(1.5));
  double prev = 0.0;
  for (double t = 0.0; t <= 60.0; t += 0.05) {
    const double x = sig.x(t);
    EXPECT_GE(x, prev);
    EXPECT_LE(x, 20.0 * (1.0 + 1e-9));
    prev = x;
  }
  const GrowthCurve dec(oracle::pstar(0.75));
  // bracket root A^{1-p} / (gamma n (1-p)), where x touches k
  EXPECT_NEAR(dec.x(8.0 * std::pow(19.0, 0.25)), 20.0, 1e-9);
  EXPECT_LT(dec.x(200.0), 1e-3);
}
