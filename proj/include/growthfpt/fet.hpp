#pragma once

// First-exit-time densities from a band between two boundaries.

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <vector>

#include "growthfpt/density.hpp"
#include "growthfpt/errors.hpp"
#include "growthfpt/fpt.hpp"
#include "growthfpt/gauss_markov.hpp"
#include "growthfpt/lognormal.hpp"
#include "growthfpt/normal.hpp"
#include "growthfpt/ou.hpp"

namespace growthfpt {

/// Linear band c_i + slope * t for a Wiener process started at slope * t0 + c.
struct BandSpec {
  double c1 = -1.0;
  double c = 0.0;
  double c2 = 1.0;
  double slope = 0.0;
};

/// Boundaries nu_i / nu times the conditional mean; nu = 1 starts exactly at x0.
struct ProportionalBand {
  double nu1 = 0.8;
  double nu = 1.0;
  double nu2 = 1.2;
};

struct SeriesControl {
  double rel_tol = 1e-12;
  int n_max = 10000;
};

/// Exit density split by the boundary reached first.
struct FetValue {
  double lower = 0.0;  ///< gamma_1, exit through s1
  double upper = 0.0;  ///< gamma_2, exit through s2
  double total() const { return lower + upper; }
};

inline void validate(const SeriesControl& ctl) {
  if (!(ctl.rel_tol > 0.0)) fail(Errc::InvalidParams, "series rel_tol must be positive");
  if (ctl.n_max < 1) fail(Errc::InvalidParams, "series n_max must be >= 1");
}

inline void validate(const ProportionalBand& band) {
  if (!(band.nu1 > 0.0 && band.nu1 < band.nu && band.nu < band.nu2))
    fail(Errc::StartOutsideBand, "proportions must satisfy 0 < nu1 < nu < nu2");
}

namespace detail {

// Image series for a unit Wiener process in clock increment dr, started at
// distance d1 above the lower and d2 below the upper boundary, both boundaries
// moving with slope a in that clock. Each family sums
//   (d + 2kw) exp{-2k^2 w^2/dr - 2kwd/dr - (a dr -/+ d)^2/(2 dr)} / sqrt(2 pi dr^3)
// over k in Z, with w = d1 + d2; the lower family is the exit through the
// lower boundary.
inline FetValue image_series(double d1, double d2, double a, double dr, const SeriesControl& ctl) {
  validate(ctl);
  const double w = d1 + d2;
  const double log_pref = -0.5 * std::log(2.0 * std::numbers::pi * dr * dr * dr);
  const double base1 = -(a * dr - d1) * (a * dr - d1) / (2.0 * dr);
  const double base2 = -(a * dr + d2) * (a * dr + d2) / (2.0 * dr);

  auto term = [&](double d, double base, double k) {
    const double coef = d + 2.0 * k * w;
    const double expo = -2.0 * k * k * w * w / dr - 2.0 * k * w * d / dr + base;
    return coef * guarded_exp(log_pref + expo);
  };

  FetValue sum{term(d1, base1, 0.0), term(d2, base2, 0.0)};
  for (int n = 1;; ++n) {
    if (n > ctl.n_max) fail(Errc::SeriesDivergence, "image series did not converge within n_max terms");
    const double k = static_cast<double>(n);
    const double lo = term(d1, base1, k) + term(d1, base1, -k);
    const double up = term(d2, base2, k) + term(d2, base2, -k);
    sum.lower += lo;
    sum.upper += up;
    const double partial = std::abs(sum.lower + sum.upper);
    const double pair = std::abs(lo) + std::abs(up);
    if (pair <= ctl.rel_tol * partial || pair == 0.0) break;
  }
  return sum;
}

}  // namespace detail

/// Closed-form exit density for the band m + a k1 + c_i k2, i = 1, 2, with
/// x0 = m(t0) + a k1(t0) + c k2(t0) fixing c. Returns both families.
template <GaussMarkov S>
FetValue fet_split_gm_closed(const S& spec, double a, double c1, double c2, double x0, double t0, double t,
                             const SeriesControl& ctl = {}) {
  detail::check_fpt_times(t0, t);
  detail::check_domain(spec, t0);
  detail::check_domain(spec, t);
  const double k20 = spec.k2(t0);
  const double c = (x0 - spec.mean(t0) - a * spec.k1(t0)) / k20;
  if (!(c1 < c && c < c2)) fail(Errc::StartOutsideBand, "start lies outside the open band");
  const double r0 = spec.k1(t0) / k20;
  const RRatio r = r_ratio(spec, t);
  FetValue v = detail::image_series(c - c1, c2 - c, a, r.value - r0, ctl);
  v.lower *= r.derivative;
  v.upper *= r.derivative;
  return v;
}

template <GaussMarkov S>
double fet_pdf_gm_closed(const S& spec, double a, double c1, double c2, double x0, double t0, double t,
                         const SeriesControl& ctl = {}) {
  return fet_split_gm_closed(spec, a, c1, c2, x0, t0, t, ctl).total();
}

/// Wiener process with variance sigma^2 in the band c_i + slope t.
inline FetValue fet_split_wiener_band(double sigma, const BandSpec& band, double t0, double t,
                                      const SeriesControl& ctl = {}) {
  const WienerSpec spec{sigma};
  const double a = band.slope / (sigma * sigma);
  const double z0 = band.slope * t0 + band.c;
  return fet_split_gm_closed(spec, a, band.c1, band.c2, z0, t0, t, ctl);
}

inline double fet_pdf_wiener_band(double sigma, const BandSpec& band, double t0, double t,
                                  const SeriesControl& ctl = {}) {
  return fet_split_wiener_band(sigma, band, t0, t, ctl).total();
}

/// Driftless Wiener process started at the midpoint of a fixed band.
inline FetValue fet_split_wiener_symmetric(double half_width, double sigma, double elapsed,
                                           const SeriesControl& ctl = {}) {
  if (!(half_width > 0.0)) fail(Errc::StartOutsideBand, "half width must be positive");
  if (!(elapsed > 0.0)) fail(Errc::OrderError, "density requires t > t0");
  const double s2 = sigma * sigma;
  FetValue v = detail::image_series(half_width, half_width, 0.0, s2 * elapsed, ctl);
  v.lower *= s2;
  v.upper *= s2;
  return v;
}

inline double fet_pdf_wiener_symmetric(double half_width, double sigma, double elapsed,
                                       const SeriesControl& ctl = {}) {
  return fet_split_wiener_symmetric(half_width, sigma, elapsed, ctl).total();
}

/// Lognormal process between nu_i / nu times its conditional mean.
template <GrowthLike C>
FetValue fet_split_lognormal_band(const BasicLognormalProcess<C>& proc, const ProportionalBand& band, double x0,
                                  double t0, double t, const SeriesControl& ctl = {}) {
  validate(band);
  detail::check_fpt_times(t0, t);
  if (!(x0 > 0.0)) fail(Errc::NonPositiveState, "lognormal start must be positive");
  if (!(t < proc.t_star())) fail(Errc::DomainError, "t is outside the curve domain");
  const double s2 = proc.sigma() * proc.sigma();
  // Wiener coordinate: band edges ln(nu_i / nu) from the start, slope 1/2 in the clock sigma^2 t.
  FetValue v = detail::image_series(std::log(band.nu / band.nu1), std::log(band.nu2 / band.nu), 0.5,
                                    s2 * (t - t0), ctl);
  v.lower *= s2;
  v.upper *= s2;
  return v;
}

template <GrowthLike C>
double fet_pdf_lognormal_band(const BasicLognormalProcess<C>& proc, const ProportionalBand& band, double x0,
                              double t0, double t, const SeriesControl& ctl = {}) {
  return fet_split_lognormal_band(proc, band, x0, t0, t, ctl).total();
}

/// Boundaries of the lognormal band, for simulation and plotting.
template <GrowthLike C>
std::pair<ExpBoundary<C>, ExpBoundary<C>> band_boundaries(const BasicLognormalProcess<C>& proc,
                                                          const ProportionalBand& band) {
  validate(band);
  return {proportional_boundary(proc, band.nu1 / band.nu), proportional_boundary(proc, band.nu2 / band.nu)};
}

/// Additive-noise band s_i = (C_i + B sigma^2 int g^2) / g with C_i / C = c_i / c.
struct OUBand {
  double c1 = 0.8;
  double c = 1.0;
  double c2 = 1.2;
  double B = 0.0;
};

template <GrowthLike C>
std::pair<AffineGMBoundary<C>, AffineGMBoundary<C>> band_boundaries(const BasicOUProcess<C>& proc,
                                                                    const OUBand& band, double x0, double t0) {
  if (!(band.c1 < band.c && band.c < band.c2)) fail(Errc::StartOutsideBand, "need c1 < c < c2");
  const double s2 = proc.sigma() * proc.sigma();
  const double start = x0 * proc.curve().g(t0) - band.B * s2 * proc.g2_prefix(t0);
  return {affine_boundary(proc, band.c1 / band.c * start, band.B), affine_boundary(proc, band.c2 / band.c * start, band.B)};
}

template <GrowthLike C>
FetValue fet_split_ou_band(const BasicOUProcess<C>& proc, double c1, double c, double c2, double B, double x0,
                           double t0, double t, const SeriesControl& ctl = {}) {
  if (!(c1 < c && c < c2)) fail(Errc::StartOutsideBand, "need c1 < c < c2");
  const auto [lo, hi] = band_boundaries(proc, OUBand{c1, c, c2, B}, x0, t0);
  return fet_split_gm_closed(gm_spec_G(proc), B, lo.A, hi.A, x0, t0, t, ctl);
}

template <GrowthLike C>
double fet_pdf_ou_band(const BasicOUProcess<C>& proc, double c1, double c, double c2, double B, double x0, double t0,
                       double t, const SeriesControl& ctl = {}) {
  return fet_split_ou_band(proc, c1, c, c2, B, x0, t0, t, ctl).total();
}

struct FetCurves {
  DensityCurve gamma1;
  DensityCurve gamma2;
  DensityCurve gamma;
};

/// Coupled Volterra system for the two exit densities, left-rectangle rule.
template <GaussMarkov S, Boundary B1, Boundary B2>
FetCurves volterra_fet(const S& spec, const B1& s1, const B2& s2, double x0, double t0, const TimeGrid& grid) {
  if (grid.start != t0) fail(Errc::GridError, "grid must start at t0");
  const std::size_t n = grid.size();
  const double h = grid.step();
  std::vector<SpecPoint> pts(n);
  std::vector<double> v1(n), d1(n), v2(n), d2(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double ti = grid.at(i);
    detail::check_domain(spec, ti);
    pts[i] = sample_spec(spec, ti);
    v1[i] = s1.value(ti);
    d1[i] = s1.derivative(ti);
    v2[i] = s2.value(ti);
    d2[i] = s2.derivative(ti);
    if (!(v1[i] < v2[i])) fail(Errc::BandCrossing, "lower boundary meets the upper boundary on the grid");
  }
  if (!(v1[0] < x0 && x0 < v2[0])) fail(Errc::StartOutsideBand, "start lies outside the open band");

  std::vector<double> g1(n, 0.0), g2(n, 0.0);
  for (std::size_t k = 1; k < n; ++k) {
    double sum1 = 0.0, sum2 = 0.0;
    for (std::size_t j = 1; j < k; ++j) {
      sum1 += g1[j] * psi_from_points(pts[k], v1[k], d1[k], v1[j], pts[j]) +
              g2[j] * psi_from_points(pts[k], v1[k], d1[k], v2[j], pts[j]);
      sum2 += g1[j] * psi_from_points(pts[k], v2[k], d2[k], v1[j], pts[j]) +
              g2[j] * psi_from_points(pts[k], v2[k], d2[k], v2[j], pts[j]);
    }
    g1[k] = 2.0 * psi_from_points(pts[k], v1[k], d1[k], x0, pts[0]) - 2.0 * h * sum1;
    g2[k] = -2.0 * psi_from_points(pts[k], v2[k], d2[k], x0, pts[0]) + 2.0 * h * sum2;
  }

  FetCurves out;
  const auto times = grid.nodes();
  out.gamma1.times = out.gamma2.times = out.gamma.times = times;
  out.gamma1.values.resize(n);
  out.gamma2.values.resize(n);
  out.gamma.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.gamma1.values[i] = std::max(0.0, g1[i]);
    out.gamma2.values[i] = std::max(0.0, g2[i]);
    out.gamma.values[i] = out.gamma1.values[i] + out.gamma2.values[i];
  }
  return out;
}

}  // namespace growthfpt
