#pragma once

// Multiplicative-noise process dX = h(t) X dt + sigma X dW.

#include <cmath>
#include <random>
#include <string>

#include "growthfpt/errors.hpp"
#include "growthfpt/gauss_markov.hpp"
#include "growthfpt/growth_curve.hpp"
#include "growthfpt/normal.hpp"

namespace growthfpt {

template <GrowthLike Curve = GrowthCurve>
class BasicLognormalProcess {
 public:
  using curve_type = Curve;

  BasicLognormalProcess(Curve curve, double sigma) : curve_(std::move(curve)), sigma_(sigma) {
    if (!(sigma > 0.0 && std::isfinite(sigma))) fail(Errc::InvalidParams, "sigma must be positive");
  }

  const Curve& curve() const noexcept { return curve_; }
  double sigma() const noexcept { return sigma_; }
  double t0() const { return curve_.t0(); }
  double x0() const { return curve_.x0(); }
  double t_star() const { return curve_.t_star(); }

  /// ln g(tau) - ln g(t), the integral of h over [tau, t].
  double log_growth(double tau, double t) const {
    if (tau == t) return 0.0;
    return curve_.log_g(tau) - curve_.log_g(t);
  }

  // Exact one-step transition x -> x exp(log_drift + log_sd N).
  struct Step {
    double log_drift = 0.0;
    double log_sd = 0.0;
  };

  Step make_step(double tau, double t) const {
    const double var = sigma_ * sigma_ * (t - tau);
    return {log_growth(tau, t) - 0.5 * var, std::sqrt(var)};
  }

  static double advance(const Step& step, double x, double normal) {
    return x * std::exp(step.log_drift + step.log_sd * normal);
  }

  /// Wiener coordinate z = ln x - int_{t0}^t h + sigma^2 t / 2.
  double to_wiener(double x, double t) const {
    return std::log(x) - log_growth(t0(), t) + 0.5 * sigma_ * sigma_ * t;
  }
  double from_wiener(double z, double t) const {
    return std::exp(z + log_growth(t0(), t) - 0.5 * sigma_ * sigma_ * t);
  }
  /// Intrinsic clock of the Wiener coordinate.
  double clock(double t) const { return sigma_ * sigma_ * t; }

 private:
  Curve curve_;
  double sigma_;
};

using LognormalProcess = BasicLognormalProcess<GrowthCurve>;

/// Lognormal law of X(t) given X(tau) = y.
struct LognormalLaw {
  double log_mean = 0.0;      ///< M_L
  double log_variance = 0.0;  ///< sigma^2 (t - tau)

  double pdf(double x) const {
    if (!(x > 0.0)) return 0.0;
    return std::exp(normal_log_pdf(std::log(x), log_mean, log_variance)) / x;
  }
  double cdf(double x) const {
    if (!(x > 0.0)) return 0.0;
    if (log_variance == 0.0) return std::log(x) < log_mean ? 0.0 : 1.0;
    return normal_cdf(std::log(x), log_mean, log_variance);
  }
  double mean() const { return std::exp(log_mean + 0.5 * log_variance); }
  double variance() const {
    const double m = mean();
    return m * m * std::expm1(log_variance);
  }
};

template <GrowthLike C>
LognormalLaw transition_law_L(const BasicLognormalProcess<C>& proc, double y, double tau, double t) {
  if (!(y > 0.0)) fail(Errc::NonPositiveState, "lognormal state must be positive");
  if (!(tau <= t)) fail(Errc::OrderError, "transition_law_L requires tau <= t");
  if (tau < proc.t0()) fail(Errc::DomainError, "tau precedes the initial time");
  const double var = proc.sigma() * proc.sigma() * (t - tau);
  return {std::log(y) + proc.log_growth(tau, t) - 0.5 * var, var};
}

/// The Wiener description of the log-transformed process.
template <GrowthLike C>
struct LognormalWienerMap {
  WienerSpec spec;
  BasicLognormalProcess<C> proc;

  double forward(double x, double t) const {
    if (!(x > 0.0)) fail(Errc::NonPositiveState, "log transform needs a positive state");
    return proc.to_wiener(x, t);
  }
  double inverse(double z, double t) const { return proc.from_wiener(z, t); }
};

template <GrowthLike C>
LognormalWienerMap<C> to_wiener_spec(const BasicLognormalProcess<C>& proc) {
  return {WienerSpec{proc.sigma()}, proc};
}

template <GrowthLike C, class Rng>
double sample_transition_L(const BasicLognormalProcess<C>& proc, double y, double tau, double t, Rng& rng) {
  const LognormalLaw law = transition_law_L(proc, y, tau, t);
  std::normal_distribution<double> normal;
  return std::exp(law.log_mean + std::sqrt(law.log_variance) * normal(rng));
}

}  // namespace growthfpt
