#pragma once

// First-passage-time densities through a single boundary.

#include <cmath>
#include <numbers>
#include <vector>

#include "growthfpt/density.hpp"
#include "growthfpt/errors.hpp"
#include "growthfpt/gauss_markov.hpp"
#include "growthfpt/growth_curve.hpp"
#include "growthfpt/lognormal.hpp"
#include "growthfpt/normal.hpp"
#include "growthfpt/ou.hpp"

namespace growthfpt {

/// s(t) = A exp{B t + int_{t0}^t h}, with t0 the curve's initial time.
template <GrowthLike C>
struct ExpBoundary {
  double A = 1.0;
  double B = 0.0;
  C curve;

  double value(double t) const { return A * std::exp(B * t + curve.log_g(curve.t0()) - curve.log_g(t)); }
  double derivative(double t) const { return value(t) * (B + curve.h(t)); }
};

template <GrowthLike C>
ExpBoundary<C> exp_boundary(const BasicLognormalProcess<C>& proc, double A, double B) {
  if (!(A > 0.0)) fail(Errc::InvalidParams, "exponential boundary needs A > 0");
  return {A, B, proc.curve()};
}

/// nu times the conditional mean of the lognormal process.
template <GrowthLike C>
ExpBoundary<C> proportional_boundary(const BasicLognormalProcess<C>& proc, double nu) {
  return exp_boundary(proc, nu * proc.x0(), 0.0);
}

/// Daniels coefficients of an exponential boundary in the Wiener coordinate.
template <GrowthLike C>
DanielsBoundary to_daniels(const BasicLognormalProcess<C>& proc, const ExpBoundary<C>& b) {
  const double s2 = proc.sigma() * proc.sigma();
  return {(b.B + 0.5 * s2) / s2, std::log(b.A)};
}

/// s(t) = (A + B sigma^2 int_{t0}^t g^2) / g(t).
template <GrowthLike C>
struct AffineGMBoundary {
  double A = 0.0;
  double B = 0.0;
  BasicOUProcess<C> proc;

  double value(double t) const {
    const double s2 = proc.sigma() * proc.sigma();
    return (A + B * s2 * proc.g2_prefix(t)) / proc.curve().g(t);
  }
  double derivative(double t) const {
    const double s2 = proc.sigma() * proc.sigma();
    return B * s2 * proc.curve().g(t) + value(t) * proc.curve().h(t);
  }
  DanielsBoundary daniels() const { return {B, A}; }
};

template <GrowthLike C>
AffineGMBoundary<C> affine_boundary(const BasicOUProcess<C>& proc, double A, double B) {
  return {A, B, proc};
}

/// nu times the conditional mean of the additive-noise process.
template <GrowthLike C>
AffineGMBoundary<C> proportional_boundary(const BasicOUProcess<C>& proc, double nu) {
  return {nu * proc.x0() * proc.curve().g(proc.t0()), 0.0, proc};
}

namespace detail {

inline void check_fpt_times(double t0, double t) {
  if (!(t > t0)) fail(Errc::OrderError, "density requires t > t0");
}

}  // namespace detail

/// Closed-form density through a Daniels-type boundary, for either side of
/// the start.
template <GaussMarkov S>
double fpt_pdf_gm_closed(const S& spec, DanielsBoundary b, double x0, double t0, double t) {
  detail::check_fpt_times(t0, t);
  detail::check_domain(spec, t0);
  detail::check_domain(spec, t);
  const DanielsCurve<S> s{spec, b};
  const double s0 = s.value(t0);
  if (s0 == x0) fail(Errc::StartOnBoundary, "start lies on the boundary");
  const double r0 = spec.k1(t0) / spec.k2(t0);
  const RRatio r = r_ratio(spec, t);
  const TransitionLaw law = transition_law(spec, x0, t0, t);
  const double prefactor = std::abs(s0 - x0) / (r.value - r0) * (spec.k2(t) / spec.k2(t0)) * r.derivative;
  const double log_f = law.log_pdf(s.value(t));
  return prefactor * guarded_exp(log_f);
}

template <GrowthLike C>
double fpt_pdf_lognormal(const BasicLognormalProcess<C>& proc, const ExpBoundary<C>& b, double x0, double t0,
                         double t) {
  detail::check_fpt_times(t0, t);
  if (!(x0 > 0.0)) fail(Errc::NonPositiveState, "lognormal start must be positive");
  if (t0 < proc.t0()) fail(Errc::DomainError, "t0 precedes the process initial time");
  if (!(t < proc.t_star())) fail(Errc::DomainError, "t is outside the curve domain");
  const double log_ratio = std::log(b.value(t0) / x0);
  if (log_ratio == 0.0) fail(Errc::StartOnBoundary, "start lies on the boundary");
  const double s2 = proc.sigma() * proc.sigma();
  const double dt = t - t0;
  const double drift = (0.5 * s2 + b.B) * dt + log_ratio;
  const double log_value = std::log(std::abs(log_ratio)) - 0.5 * std::log(2.0 * std::numbers::pi * s2 * dt * dt * dt) -
                           drift * drift / (2.0 * s2 * dt);
  return guarded_exp(log_value);
}

template <GrowthLike C>
double fpt_pdf_ou(const BasicOUProcess<C>& proc, const AffineGMBoundary<C>& b, double x0, double t0, double t) {
  return fpt_pdf_gm_closed(gm_spec_G(proc), b.daniels(), x0, t0, t);
}

/// Volterra second-kind equation for the FPT density, left-rectangle rule on
/// a uniform grid starting at t0.
template <GaussMarkov S, Boundary B>
DensityCurve volterra_fpt(const S& spec, const B& boundary, double x0, double t0, const TimeGrid& grid) {
  if (grid.start != t0) fail(Errc::GridError, "grid must start at t0");
  const double s0 = boundary.value(t0);
  if (s0 == x0) fail(Errc::StartOnBoundary, "start lies on the boundary");
  const double sign = x0 < s0 ? 1.0 : -1.0;

  const std::size_t n = grid.size();
  const double h = grid.step();
  std::vector<SpecPoint> pts(n);
  std::vector<double> sv(n), sd(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double ti = grid.at(i);
    detail::check_domain(spec, ti);
    pts[i] = sample_spec(spec, ti);
    sv[i] = boundary.value(ti);
    sd[i] = boundary.derivative(ti);
  }

  std::vector<double> g(n, 0.0);
  for (std::size_t k = 1; k < n; ++k) {
    double acc = -2.0 * psi_from_points(pts[k], sv[k], sd[k], x0, pts[0]);
    double sum = 0.0;
    for (std::size_t j = 1; j < k; ++j) sum += g[j] * psi_from_points(pts[k], sv[k], sd[k], sv[j], pts[j]);
    acc += 2.0 * h * sum;
    g[k] = sign * acc;
  }

  DensityCurve out;
  out.times = grid.nodes();
  out.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.values[i] = std::max(0.0, g[i]);
  return out;
}

}  // namespace growthfpt
