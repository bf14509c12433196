#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "growthfpt/growthfpt.hpp"
#include "oracles.hpp"

using namespace growthfpt;

TEST(LognormalLaw, IdentityCase) {
  const LognormalProcess proc(GrowthCurve(oracle::pstar(1.5)), 0.02);
  const LognormalLaw law = transition_law_L(proc, 2.5, 1.0, 1.0);
  EXPECT_DOUBLE_EQ(law.log_mean, std::log(2.5));
  EXPECT_DOUBLE_EQ(law.log_variance, 0.0);
}

TEST(LognormalLaw, MeanFollowsCurve) {
  for (double p : {1.5, 1.0, 0.75, 2.0 / 3.0, 0.25}) {
    const GrowthCurve curve(oracle::pstar(p));
    const LognormalProcess proc(curve, 0.05);
    for (double t : {0.5, 2.0, 10.0, 20.0}) EXPECT_NEAR(transition_law_L(proc, 1.0, 0.0, t).mean(), curve.x(t), 1e-12 * curve.x(t));
  }
}

TEST(LognormalLaw, MomentsAtOne) {
  const LognormalProcess proc(GrowthCurve(oracle::pstar(1.5)), 0.02);
  const LognormalLaw law = transition_law_L(proc, 1.0, 0.0, 1.0);
  const double x1 = (20.0 / 19.0) / oracle::g_pstar(1.0);
  EXPECT_NEAR(oracle::g_pstar(1.0), 0.281624, 1e-6);
  EXPECT_NEAR(law.mean(), x1, 1e-12);
  EXPECT_NEAR(law.mean(), 3.737715, 1e-6);
  EXPECT_NEAR(law.variance(), x1 * x1 * std::expm1(0.0004), 1e-14);
  EXPECT_NEAR(law.variance(), 5.589e-3, 1e-6);
}

TEST(LognormalLaw, Errors) {
  const LognormalProcess proc(GrowthCurve(oracle::pstar(0.25)), 0.02);
  auto code = [](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::InvalidParams;
  };
  EXPECT_EQ(code([&] { (void)transition_law_L(proc, -1.0, 0.0, 1.0); }), Errc::NonPositiveState);
  EXPECT_EQ(code([&] { (void)transition_law_L(proc, 1.0, 2.0, 1.0); }), Errc::OrderError);
  EXPECT_EQ(code([&] { (void)transition_law_L(proc, 1.0, 0.0, 30.0); }), Errc::DomainError);
  EXPECT_THROW(LognormalProcess(GrowthCurve(oracle::pstar(1.5)), -0.1), Error);
}

TEST(WienerMap, OriginAndRoundTrip) {
  const LognormalProcess proc(GrowthCurve(oracle::pstar(1.5)), 0.02);
  const auto map = to_wiener_spec(proc);
  EXPECT_EQ(map.forward(1.0, 0.0), 0.0);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const double x = 0.1 + 30.0 * u(rng), t = 40.0 * u(rng);
    EXPECT_NEAR(map.inverse(map.forward(x, t), t), x, 1e-12 * x);
  }
  const auto c = infinitesimal_coeffs(map.spec, 0.3, 5.0);
  EXPECT_EQ(c.drift, 0.0);
  EXPECT_NEAR(c.variance, 4e-4, 1e-18);
  EXPECT_THROW((void)map.forward(0.0, 1.0), Error);
}

TEST(SampleTransition, DeterministicLimit) {
  const GrowthCurve curve(oracle::pstar(1.5));
  const LognormalProcess proc(curve, 1e-12);
  std::mt19937_64 rng(1);
  EXPECT_NEAR(sample_transition_L(proc, 2.0, 1.0, 3.0, rng), 2.0 * curve.g(1.0) / curve.g(3.0), 1e-9);
}

TEST(SampleTransition, MeanAndLogSkewness) {
  const LognormalProcess proc(GrowthCurve(oracle::pstar(1.5)), 0.3);
  const LognormalLaw law = transition_law_L(proc, 1.0, 0.0, 1.0);
  std::mt19937_64 rng(77);
  const int n = 400000;
  double s = 0.0, s2 = 0.0, l1 = 0.0, l2 = 0.0, l3 = 0.0;
  std::vector<double> logs(n);
  for (int i = 0; i < n; ++i) {
    const double x = sample_transition_L(proc, 1.0, 0.0, 1.0, rng);
    s += x;
    s2 += x * x;
    logs[i] = std::log(x);
    l1 += logs[i];
  }
  const double mean = s / n;
  const double se = std::sqrt((s2 / n - mean * mean) / n);
  EXPECT_LT(std::abs(mean - law.mean()), 3.0 * se);
  l1 /= n;
  for (double v : logs) {
    l2 += (v - l1) * (v - l1);
    l3 += (v - l1) * (v - l1) * (v - l1);
  }
  const double skew = (l3 / n) / std::pow(l2 / n, 1.5);
  EXPECT_LT(std::abs(skew), 3.0 * std::sqrt(6.0 / n));
}
