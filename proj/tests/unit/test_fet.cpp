#include <gtest/gtest.h>

#include <cmath>

#include "growthfpt/growthfpt.hpp"
#include "oracles.hpp"

using namespace growthfpt;

namespace {

// Exit density of sigma W from (-a, a) started at 0, by eigenfunction expansion.
double symmetric_eigen(double a, double sigma, double t) {
  double sum = 0.0;
  for (int k = 0; k < 200; ++k) {
    const double m = 2.0 * k + 1.0;
    sum += (k % 2 ? -1.0 : 1.0) * m * std::exp(-m * m * M_PI * M_PI * sigma * sigma * t / (8.0 * a * a));
  }
  return M_PI * sigma * sigma / (2.0 * a * a) * sum;
}

template <class F>
double mass(F&& f, double first = 1.0, double end = 1e8) {
  const auto pts = geometric_breakpoints(0.0, end, first);
  return integrate_piecewise(f, pts, QuadratureSpec{1e-10, 1e-15, 50});
}

}  // namespace

TEST(FetSymmetric, EigenExpansion) {
  for (double t : {0.05, 0.2, 0.5, 1.0, 3.0})
    EXPECT_NEAR(fet_pdf_wiener_symmetric(1.0, 1.0, t), symmetric_eigen(1.0, 1.0, t), 1e-10) << t;
  EXPECT_NEAR(fet_pdf_wiener_symmetric(0.5, 2.0, 0.07), symmetric_eigen(0.5, 2.0, 0.07), 1e-9);
}

TEST(FetSymmetric, MeanAndMass) {
  auto f = [](double t) { return t > 0.0 ? fet_pdf_wiener_symmetric(1.0, 1.0, t) : 0.0; };
  // the density is below 1e-30 past t = 60
  EXPECT_NEAR(mass(f, 0.25, 60.0), 1.0, 1e-4);
  EXPECT_NEAR(mass([&](double t) { return t * f(t); }, 0.25, 60.0), 1.0, 0.005);
  EXPECT_EQ(f(1e-6), 0.0);
}

TEST(FetSymmetric, SidesAgree) {
  for (double t : {0.01, 0.3, 2.0, 9.0}) {
    const FetValue v = fet_split_wiener_symmetric(1.0, 1.0, t);
    EXPECT_EQ(v.lower, v.upper);
    EXPECT_NEAR(fet_pdf_gm_closed(WienerSpec{1.0}, 0.0, -1.0, 1.0, 0.0, 0.0, t), v.total(), 1e-12);
  }
}

TEST(FetLognormal, EqualsWienerBand) {
  const LognormalProcess proc(GrowthCurve(oracle::pstar(1.5)), 0.02);
  const ProportionalBand band{0.8, 1.0, 1.25};
  const BandSpec w{std::log(0.8), 0.0, std::log(1.25), 0.5 * 0.02 * 0.02};
  for (double t : {1.0, 10.0, 50.0, 200.0, 800.0}) {
    const double a = fet_pdf_lognormal_band(proc, band, 1.0, 0.0, t);
    const double b = fet_pdf_wiener_band(0.02, w, 0.0, t);
    EXPECT_NEAR(a, b, 1e-10 * std::max(1e-300, b)) << t;
  }
}

TEST(FetLognormal, MassAndPInvariance) {
  const ProportionalBand band{0.8, 1.0, 1.2};
  const LognormalProcess proc(GrowthCurve(oracle::pstar(1.5)), 0.02);
  EXPECT_NEAR(mass([&](double t) { return t > 0.0 ? fet_pdf_lognormal_band(proc, band, 1.0, 0.0, t) : 0.0; }), 1.0, 1e-4);
  for (double p : {1.0, 0.75, 2.0 / 3.0, 0.25}) {
    const LognormalProcess other(GrowthCurve(oracle::pstar(p)), 0.02);
    for (double t : {3.0, 15.0, 21.0}) {
      const double ref = fet_pdf_lognormal_band(proc, band, 1.0, 0.0, t);
      EXPECT_NEAR(fet_pdf_lognormal_band(other, band, 1.0, 0.0, t), ref, 1e-12 * ref);
    }
  }
}

TEST(FetLognormal, BandValidation) {
  const LognormalProcess proc(GrowthCurve(oracle::pstar(1.5)), 0.02);
  EXPECT_THROW((void)fet_pdf_lognormal_band(proc, ProportionalBand{1.0, 1.0, 1.2}, 1.0, 0.0, 1.0), Error);
  EXPECT_THROW((void)fet_pdf_lognormal_band(proc, ProportionalBand{0.8, 1.0, 0.9}, 1.0, 0.0, 1.0), Error);
}

TEST(FetOU, MassOverLongHorizon) {
  const OUProcess ou(GrowthCurve(oracle::pstar(1.5)), 0.1, 2e5);
  auto f = [&](double t) { return t > 0.0 ? fet_pdf_ou_band(ou, 0.8, 1.0, 1.2, 0.0, 1.0, 0.0, t) : 0.0; };
  const auto pts = geometric_breakpoints(0.0, 1.5e5, 0.5);
  EXPECT_NEAR(integrate_piecewise(f, pts, QuadratureSpec{1e-9, 1e-15, 50}), 1.0, 1e-3);
}

TEST(FetOU, StartOnLowerEdge) {
  const OUProcess ou(GrowthCurve(oracle::pstar(1.5)), 0.1);
  try {
    (void)fet_pdf_ou_band(ou, 1.0, 1.0, 1.2, 0.0, 1.0, 0.0, 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::StartOutsideBand);
  }
}

TEST(VolterraFet, SumOfSides) {
  const WienerSpec w{1.0};
  const auto f = volterra_fet(w, GeneralBoundary::constant(-1.0), GeneralBoundary::constant(1.0), 0.0, 0.0,
                              TimeGrid::uniform(0.0, 4.0, 400));
  for (std::size_t i = 0; i < f.gamma.size(); ++i)
    EXPECT_DOUBLE_EQ(f.gamma.values[i], f.gamma1.values[i] + f.gamma2.values[i]);
}

TEST(VolterraFet, DanielsBandMatchesClosedForm) {
  const WienerSpec w{1.0};
  const double a = 0.3;
  const auto s1 = bind(w, DanielsBoundary{a, -1.0});
  const auto s2 = bind(w, DanielsBoundary{a, 1.5});
  const auto f = volterra_fet(w, s1, s2, 0.0, 0.0, TimeGrid::uniform(0.0, 6.0, 4000));
  double peak = 0.0;
  for (std::size_t i = 1; i < f.gamma.size(); ++i)
    peak = std::max(peak, fet_pdf_gm_closed(w, a, -1.0, 1.5, 0.0, 0.0, f.gamma.times[i]));
  for (std::size_t i = 1; i < f.gamma.size(); ++i) {
    const double c = fet_pdf_gm_closed(w, a, -1.0, 1.5, 0.0, 0.0, f.gamma.times[i]);
    if (c > 0.01 * peak) EXPECT_NEAR(f.gamma.values[i], c, 0.01 * c) << f.gamma.times[i];
  }
}

TEST(VolterraFet, SymmetricSides) {
  const WienerSpec w{1.0};
  const auto f = volterra_fet(w, GeneralBoundary::constant(-1.0), GeneralBoundary::constant(1.0), 0.0, 0.0,
                              TimeGrid::uniform(0.0, 4.0, 4000));
  const double peak = f.gamma1.peak_value();
  for (std::size_t i = 1; i < f.gamma.size(); ++i)
    if (f.gamma1.values[i] > 0.01 * peak) EXPECT_NEAR(f.gamma1.values[i], f.gamma2.values[i], 0.01 * f.gamma1.values[i]);
}

TEST(VolterraFet, Preconditions) {
  const WienerSpec w{1.0};
  EXPECT_THROW((void)volterra_fet(w, GeneralBoundary::constant(0.0), GeneralBoundary::constant(1.0), 0.0, 0.0,
                                  TimeGrid::uniform(0.0, 1.0, 10)),
               Error);
  EXPECT_THROW((void)volterra_fet(w, GeneralBoundary::constant(1.0), GeneralBoundary::constant(-1.0), 0.0, 0.0,
                                  TimeGrid::uniform(0.0, 1.0, 10)),
               Error);
}
