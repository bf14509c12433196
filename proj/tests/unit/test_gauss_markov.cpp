#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "growthfpt/growthfpt.hpp"
#include "oracles.hpp"

using namespace growthfpt;

TEST(RRatio, Wiener) {
  const WienerSpec w{1.0};
  for (double t : {0.5, 1.0, 7.0}) {
    const RRatio r = r_ratio(w, t);
    EXPECT_DOUBLE_EQ(r.value, t);
    EXPECT_DOUBLE_EQ(r.derivative, 1.0);
  }
}

TEST(RRatio, OU) {
  const OUProcess ou(GrowthCurve(oracle::pstar(1.5)), 0.1);
  const auto spec = gm_spec_G(ou);
  const double dr = r_ratio(spec, 1.0).value - r_ratio(spec, 0.0).value;
  EXPECT_NEAR(dr, 0.01 * oracle::g2_integral_pstar(1.0), 1e-12);
  EXPECT_NEAR(dr, 3.2551e-3, 1e-7);
  EXPECT_EQ(r_ratio(spec, 0.0).value, 0.0);
  EXPECT_DOUBLE_EQ(spec.k2(0.0), 19.0 / 20.0);
}

TEST(RRatio, StrictlyIncreasing) {
  const OUProcess ou(GrowthCurve(oracle::pstar(1.5)), 0.3);
  const auto spec = gm_spec_G(ou);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 30.0);
  for (int g = 0; g < 100; ++g) {
    std::vector<double> ts(20);
    for (double& t : ts) t = u(rng);
    std::sort(ts.begin(), ts.end());
    for (std::size_t i = 1; i < ts.size(); ++i)
      if (ts[i] > ts[i - 1]) EXPECT_GT(r_ratio(spec, ts[i]).value, r_ratio(spec, ts[i - 1]).value);
  }
}

TEST(TransitionLaw, WienerAndIdentity) {
  const WienerSpec w{1.0};
  const TransitionLaw law = transition_law(w, 0.0, 0.0, 2.0);
  EXPECT_DOUBLE_EQ(law.mean, 0.0);
  EXPECT_DOUBLE_EQ(law.variance, 2.0);
  const TransitionLaw same = transition_law(w, 0.7, 3.0, 3.0);
  EXPECT_DOUBLE_EQ(same.mean, 0.7);
  EXPECT_DOUBLE_EQ(same.variance, 0.0);
  try {
    (void)transition_law(w, 0.0, 2.0, 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::OrderError);
  }
}

template <class S>
void chapman_kolmogorov(const S& spec, double y, double tau, double s, double t, double x) {
  const TransitionLaw mid = transition_law(spec, y, tau, s);
  const double sd = std::sqrt(mid.variance);
  const double lhs = integrate_adaptive(
      [&](double z) { return transition_law(spec, z, s, t).pdf(x) * mid.pdf(z); }, mid.mean - 12.0 * sd,
      mid.mean + 12.0 * sd, QuadratureSpec{1e-12, 1e-15, 50});
  const double rhs = transition_law(spec, y, tau, t).pdf(x);
  EXPECT_NEAR(lhs, rhs, 1e-6 * std::max(1.0, rhs));
}

TEST(TransitionLaw, ChapmanKolmogorov) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const OUProcess ou(GrowthCurve(oracle::pstar(1.5)), 0.2);
  const auto spec = gm_spec_G(ou);
  for (int i = 0; i < 10; ++i) {
    const double tau = 3.0 * u(rng), s = tau + 0.1 + u(rng), t = s + 0.1 + u(rng);
    chapman_kolmogorov(WienerSpec{0.5 + u(rng)}, u(rng), tau, s, t, u(rng));
    const double y = 1.0 + 3.0 * u(rng);
    chapman_kolmogorov(spec, y, tau, s, t, transition_law(spec, y, tau, t).mean + 0.1 * (u(rng) - 0.5));
  }
}

TEST(InfinitesimalCoeffs, WienerAndOU) {
  const auto w = infinitesimal_coeffs(WienerSpec{0.02}, 1.3, 2.0);
  EXPECT_DOUBLE_EQ(w.drift, 0.0);
  EXPECT_NEAR(w.variance, 4e-4, 1e-18);
  const GrowthCurve curve(oracle::pstar(1.5));
  const OUProcess ou(curve, 0.1);
  for (double t : {0.0, 0.5, 2.0, 10.0})
    for (double x : {-1.0, 0.5, 3.0}) {
      const auto c = infinitesimal_coeffs(gm_spec_G(ou), x, t);
      EXPECT_NEAR(c.drift, curve.h(t) * x, 1e-12);
      EXPECT_NEAR(c.variance, 0.01, 1e-12);
    }
}

TEST(InfinitesimalCoeffs, DriftMatchesFiniteDifference) {
  const GrowthCurve curve(oracle::pstar(1.5));
  const OUProcess ou(curve, 0.1);
  const auto spec = gm_spec_G(ou);
  for (double t : {0.3, 1.0, 4.0}) {
    const double x = 2.0, d = 1e-6;
    const double fd = (transition_law(spec, x, t, t + d).mean - x) / d;
    EXPECT_NEAR(fd, infinitesimal_coeffs(spec, x, t).drift, 1e-4);
  }
}

TEST(Psi, WienerConstantLevel) {
  const WienerSpec w{1.0};
  const auto s = GeneralBoundary::constant(1.0);
  const double psi = psi_kernel(w, s, 1.0, 0.0, 0.0);
  EXPECT_NEAR(psi, -0.5 * oracle::std_normal_pdf(1.0), 1e-15);
  EXPECT_NEAR(psi, -0.120985, 1e-6);
  EXPECT_THROW((void)psi_kernel(w, s, 1.0, 0.0, 1.0), Error);
}

TEST(Psi, VanishesOnDanielsBoundaries) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const OUProcess ou(GrowthCurve(oracle::pstar(1.5)), 0.1);
  const auto spec = gm_spec_G(ou);
  for (int i = 0; i < 200; ++i) {
    const DanielsBoundary d{4.0 * u(rng) - 2.0, 4.0 * u(rng) - 2.0};
    const double tau = 5.0 * u(rng), t = tau + 0.05 + 5.0 * u(rng);
    const auto sw = bind(WienerSpec{0.3 + u(rng)}, d);
    EXPECT_LT(std::abs(psi_kernel(sw.spec, sw, t, sw.value(tau), tau)), 1e-12);
    const auto so = bind(spec, d);
    EXPECT_LT(std::abs(psi_kernel(spec, so, t, so.value(tau), tau)), 1e-10);
  }
}

TEST(Psi, MinusTwoPsiIsClosedFormOnDaniels) {
  const OUProcess ou(GrowthCurve(oracle::pstar(1.5)), 0.1);
  const auto spec = gm_spec_G(ou);
  const DanielsBoundary d{0.0, 0.8 * 20.0 / 19.0};
  const auto s = bind(spec, d);
  for (double t : {0.5, 1.0, 3.0, 8.0}) {
    const double closed = fpt_pdf_gm_closed(spec, d, 1.0, 0.0, t);
    // start above the boundary, so the sign of -2 Psi flips
    EXPECT_NEAR(2.0 * psi_kernel(spec, s, t, 1.0, 0.0), closed, 1e-10 * std::max(1.0, closed)) << t;
  }
}
