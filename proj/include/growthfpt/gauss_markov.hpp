#pragma once

// Gauss-Markov processes through the covariance factorization
// c(s,t) = k1(s) k2(t), s <= t, with r(t) = k1(t)/k2(t) increasing.

#include <cmath>
#include <concepts>
#include <functional>
#include <limits>
#include <utility>

#include "growthfpt/errors.hpp"
#include "growthfpt/normal.hpp"

namespace growthfpt {

/// A Gauss-Markov process described by its mean m and covariance factors
/// k1, k2, each with an analytic derivative.
template <class S>
concept GaussMarkov = requires(const S& s, double t) {
  { s.mean(t) } -> std::convertible_to<double>;
  { s.mean_dot(t) } -> std::convertible_to<double>;
  { s.k1(t) } -> std::convertible_to<double>;
  { s.k1_dot(t) } -> std::convertible_to<double>;
  { s.k2(t) } -> std::convertible_to<double>;
  { s.k2_dot(t) } -> std::convertible_to<double>;
  { s.contains(t) } -> std::convertible_to<bool>;
};

/// Time-varying boundary with its derivative.
template <class B>
concept Boundary = requires(const B& b, double t) {
  { b.value(t) } -> std::convertible_to<double>;
  { b.derivative(t) } -> std::convertible_to<double>;
};

/// Driftless Wiener process with infinitesimal variance sigma^2:
/// m = 0, k1 = sigma^2 t, k2 = 1.
struct WienerSpec {
  double sigma = 1.0;

  double mean(double) const noexcept { return 0.0; }
  double mean_dot(double) const noexcept { return 0.0; }
  double k1(double t) const noexcept { return sigma * sigma * t; }
  double k1_dot(double) const noexcept { return sigma * sigma; }
  double k2(double) const noexcept { return 1.0; }
  double k2_dot(double) const noexcept { return 0.0; }
  bool contains(double t) const noexcept { return std::isfinite(t); }
};

/// Type-erased specification, for processes assembled at run time.
struct GMSpec {
  using Fn = std::function<double(double)>;
  Fn mean_fn, mean_dot_fn, k1_fn, k1_dot_fn, k2_fn, k2_dot_fn;
  double t_begin = -std::numeric_limits<double>::infinity();
  double t_end = std::numeric_limits<double>::infinity();

  double mean(double t) const { return mean_fn(t); }
  double mean_dot(double t) const { return mean_dot_fn(t); }
  double k1(double t) const { return k1_fn(t); }
  double k1_dot(double t) const { return k1_dot_fn(t); }
  double k2(double t) const { return k2_fn(t); }
  double k2_dot(double t) const { return k2_dot_fn(t); }
  bool contains(double t) const { return t >= t_begin && t < t_end; }

  template <GaussMarkov S>
  static GMSpec from(const S& spec) {
    GMSpec out;
    out.mean_fn = [spec](double t) { return spec.mean(t); };
    out.mean_dot_fn = [spec](double t) { return spec.mean_dot(t); };
    out.k1_fn = [spec](double t) { return spec.k1(t); };
    out.k1_dot_fn = [spec](double t) { return spec.k1_dot(t); };
    out.k2_fn = [spec](double t) { return spec.k2(t); };
    out.k2_dot_fn = [spec](double t) { return spec.k2_dot(t); };
    return out;
  }
};

/// Boundary given by arbitrary callables.
struct GeneralBoundary {
  std::function<double(double)> value_fn;
  std::function<double(double)> derivative_fn;

  double value(double t) const { return value_fn(t); }
  double derivative(double t) const { return derivative_fn(t); }

  static GeneralBoundary constant(double level) {
    return {[level](double) { return level; }, [](double) { return 0.0; }};
  }
};

/// Coefficients of a Daniels-type boundary m(t) + d1 k1(t) + d2 k2(t).
struct DanielsBoundary {
  double d1 = 0.0;
  double d2 = 0.0;
};

/// A Daniels boundary bound to the process it is defined against.
template <GaussMarkov S>
struct DanielsCurve {
  S spec;
  DanielsBoundary coeffs;

  double value(double t) const {
    return spec.mean(t) + coeffs.d1 * spec.k1(t) + coeffs.d2 * spec.k2(t);
  }
  double derivative(double t) const {
    return spec.mean_dot(t) + coeffs.d1 * spec.k1_dot(t) + coeffs.d2 * spec.k2_dot(t);
  }
};

template <GaussMarkov S>
DanielsCurve<S> bind(const S& spec, DanielsBoundary coeffs) {
  return {spec, coeffs};
}

namespace detail {

template <GaussMarkov S>
void check_domain(const S& spec, double t) {
  if (!spec.contains(t)) fail(Errc::DomainError, "time " + std::to_string(t) + " is outside the process domain");
}

}  // namespace detail

struct RRatio {
  double value;
  double derivative;
};

template <GaussMarkov S>
RRatio r_ratio(const S& spec, double t) {
  detail::check_domain(spec, t);
  const double k1 = spec.k1(t);
  const double k2 = spec.k2(t);
  return {k1 / k2, (spec.k1_dot(t) * k2 - k1 * spec.k2_dot(t)) / (k2 * k2)};
}

/// Normal law of X(t) given X(tau) = y.
struct TransitionLaw {
  double mean = 0.0;
  double variance = 0.0;

  double pdf(double x) const { return normal_pdf(x, mean, variance); }
  double log_pdf(double x) const { return normal_log_pdf(x, mean, variance); }
  double cdf(double x) const {
    if (variance == 0.0) return x < mean ? 0.0 : 1.0;
    return normal_cdf(x, mean, variance);
  }
};

template <GaussMarkov S>
TransitionLaw transition_law(const S& spec, double y, double tau, double t) {
  require(tau <= t, Errc::OrderError, "transition_law requires tau <= t");
  detail::check_domain(spec, tau);
  detail::check_domain(spec, t);
  if (tau == t) return {y, 0.0};
  const double ratio = spec.k2(t) / spec.k2(tau);
  TransitionLaw law;
  law.mean = spec.mean(t) + ratio * (y - spec.mean(tau));
  law.variance = spec.k2(t) * (spec.k1(t) - ratio * spec.k1(tau));
  return law;
}

struct InfinitesimalCoeffs {
  double drift;     ///< B1(x, t)
  double variance;  ///< B2(t)
};

template <GaussMarkov S>
InfinitesimalCoeffs infinitesimal_coeffs(const S& spec, double x, double t) {
  detail::check_domain(spec, t);
  const double k2 = spec.k2(t);
  const RRatio r = r_ratio(spec, t);
  return {spec.mean_dot(t) + (x - spec.mean(t)) * spec.k2_dot(t) / k2, k2 * k2 * r.derivative};
}

/// Process and boundary values frozen at one instant; the Volterra solvers
/// tabulate these once per grid node.
struct SpecPoint {
  double t = 0.0;
  double m = 0.0, m_dot = 0.0;
  double k1 = 0.0, k1_dot = 0.0;
  double k2 = 0.0, k2_dot = 0.0;
};

template <GaussMarkov S>
SpecPoint sample_spec(const S& spec, double t) {
  return {t, spec.mean(t), spec.mean_dot(t), spec.k1(t), spec.k1_dot(t), spec.k2(t), spec.k2_dot(t)};
}

/// Psi[s(t), t | y, tau] from tabulated values; `at` is time t, `from` is tau.
inline double psi_from_points(const SpecPoint& at, double s, double s_dot, double y, const SpecPoint& from) {
  const double denom = at.k1 * from.k2 - at.k2 * from.k1;
  const double bracket = 0.5 * (s_dot - at.m_dot) -
                         0.5 * (s - at.m) * (at.k1_dot * from.k2 - at.k2_dot * from.k1) / denom -
                         0.5 * (y - from.m) * (at.k2_dot * at.k1 - at.k2 * at.k1_dot) / denom;
  const double ratio = at.k2 / from.k2;
  const double mean = at.m + ratio * (y - from.m);
  const double variance = ratio * denom;
  return bracket * normal_pdf(s, mean, variance);
}

/// Volterra kernel Psi[s(t), t | y, tau] for tau < t.
template <GaussMarkov S, Boundary B>
double psi_kernel(const S& spec, const B& boundary, double t, double y, double tau) {
  require(tau < t, Errc::OrderError, "psi_kernel requires tau < t");
  detail::check_domain(spec, tau);
  detail::check_domain(spec, t);
  return psi_from_points(sample_spec(spec, t), boundary.value(t), boundary.derivative(t), y,
                         sample_spec(spec, tau));
}

}  // namespace growthfpt
