#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "growthfpt/growthfpt.hpp"
#include "oracles.hpp"

using namespace growthfpt;

TEST(Quadrature, PolynomialExactness) {
  EXPECT_NEAR(integrate_adaptive([](double t) { return t * t; }, 0.0, 1.0), 1.0 / 3.0, 1e-16);
  EXPECT_NEAR(integrate_adaptive([](double t) { return t * t * t; }, -1.0, 2.0), 15.0 / 4.0, 1e-14);
  EXPECT_EQ(integrate_adaptive([](double t) { return t; }, 2.0, 2.0), 0.0);
}

TEST(Quadrature, SquaredGrowthFactor) {
  const GrowthCurve c(oracle::pstar(1.5));
  const double v = integrate_adaptive([&](double u) { return c.g(u) * c.g(u); }, 0.0, 1.0);
  EXPECT_NEAR(v, oracle::g2_integral_pstar(1.0), 1e-10);
  EXPECT_NEAR(v, 0.325510, 1e-6);
}

TEST(Quadrature, Additivity) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto f = [](double t) { return std::exp(-t) * std::sin(3.0 * t) + 1.0; };
  const QuadratureSpec spec{1e-10, 1e-14, 40};
  for (int i = 0; i < 50; ++i) {
    const double a = 5.0 * u(rng), c = a + 5.0 * u(rng) + 0.1, b = a + (c - a) * u(rng);
    const double whole = integrate_adaptive(f, a, c, spec);
    const double split = integrate_adaptive(f, a, b, spec) + integrate_adaptive(f, b, c, spec);
    EXPECT_NEAR(whole, split, 2.0 * spec.rel_tol * std::abs(whole));
  }
}

TEST(Quadrature, PrefixIntegrals) {
  const std::vector<double> single{0.0};
  EXPECT_EQ(prefix_integrals([](double) { return 1.0; }, single), std::vector<double>{0.0});

  const GrowthCurve c(oracle::pstar(1.5));
  auto g2 = [&](double u) { return c.g(u) * c.g(u); };
  std::vector<double> grid(1000);
  for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = 0.02 * static_cast<double>(i);
  const auto pre = prefix_integrals(g2, grid);
  for (std::size_t i = 0; i < grid.size(); i += 37) EXPECT_NEAR(pre[i], integrate_adaptive(g2, 0.0, grid[i]), 1e-9);
  for (std::size_t i = 1; i < grid.size(); i += 53)
    EXPECT_NEAR(pre[i] - pre[i - 1], integrate_adaptive(g2, grid[i - 1], grid[i]), 1e-10);
}

TEST(Quadrature, ClipsAtCeilingTime) {
  const double ts = 24.267997022474447;
  EXPECT_LT(clip_to_domain(30.0, ts), ts);
  EXPECT_NEAR(clip_to_domain(30.0, ts), ts - 1e-12 * ts, 1e-15 * ts);
  EXPECT_EQ(clip_to_domain(10.0, ts), 10.0);
  EXPECT_EQ(clip_to_domain(10.0, INFINITY), 10.0);
}

TEST(Quadrature, RejectsBadSpec) { EXPECT_THROW(validate(QuadratureSpec{-1.0, 0.0, 10}), Error); }
