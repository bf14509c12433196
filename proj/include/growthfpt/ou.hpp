#pragma once

// Additive-noise process dX = h(t) X dt + sigma dW, a Gauss-Markov process
// with m = 0, k2 = 1/g and k1 = sigma^2 k2 int_{t0}^t g^2.

#include <algorithm>
#include <cmath>
#include <memory>
#include <random>
#include <vector>

#include "growthfpt/errors.hpp"
#include "growthfpt/gauss_markov.hpp"
#include "growthfpt/growth_curve.hpp"
#include "growthfpt/quadrature.hpp"

namespace growthfpt {

/// int_{t0}^t g^2 with prefix sums on a uniform grid up to a horizon; past
/// the last node the remainder is integrated adaptively.
template <GrowthLike Curve>
class G2Integral {
 public:
  G2Integral(const Curve& curve, double horizon, double step, QuadratureSpec spec = {})
      : curve_(curve), spec_(spec), t0_(curve.t0()), step_(step) {
    if (!(horizon > 0.0 && step > 0.0)) fail(Errc::InvalidParams, "g^2 cache needs positive horizon and step");
    const double end = clip_to_domain(t0_ + horizon, curve.t_star());
    const auto count = static_cast<std::size_t>(std::floor((end - t0_) / step_));
    nodes_.resize(count + 1);
    for (std::size_t i = 0; i <= count; ++i) nodes_[i] = t0_ + step_ * static_cast<double>(i);
    prefix_ = prefix_integrals([this](double u) { return g2(u); }, nodes_, spec_);
  }

  double g2(double t) const { return std::exp(2.0 * curve_.log_g(t)); }

  /// int_{t0}^t g^2.
  double prefix(double t) const {
    if (t < t0_) fail(Errc::DomainError, "g^2 integral requested before t0");
    if (t == t0_) return 0.0;
    const auto idx = std::min(nodes_.size() - 1, static_cast<std::size_t>((t - t0_) / step_));
    const double rest = t > nodes_[idx] ? integrate_adaptive([this](double u) { return g2(u); }, nodes_[idx], t, spec_)
                                        : 0.0;
    return prefix_[idx] + rest;
  }

  /// int_a^b g^2, integrated directly so short steps keep full precision.
  double between(double a, double b) const {
    if (a == b) return 0.0;
    return integrate_adaptive([this](double u) { return g2(u); }, a, b, spec_);
  }

 private:
  Curve curve_;
  QuadratureSpec spec_;
  double t0_;
  double step_;
  std::vector<double> nodes_;
  std::vector<double> prefix_;
};

template <GrowthLike Curve = GrowthCurve>
class BasicOUProcess {
 public:
  using curve_type = Curve;

  static constexpr double kDefaultCacheHorizon = 1000.0;
  static constexpr double kCacheStep = 0.25;

  BasicOUProcess(Curve curve, double sigma, double cache_horizon = kDefaultCacheHorizon)
      : curve_(std::move(curve)), sigma_(sigma) {
    if (!(sigma > 0.0 && std::isfinite(sigma))) fail(Errc::InvalidParams, "sigma must be positive");
    cache_ = std::make_shared<const G2Integral<Curve>>(curve_, cache_horizon, kCacheStep);
  }

  const Curve& curve() const noexcept { return curve_; }
  double sigma() const noexcept { return sigma_; }
  double t0() const { return curve_.t0(); }
  double x0() const { return curve_.x0(); }
  double t_star() const { return curve_.t_star(); }

  double g2_prefix(double t) const { return cache_->prefix(t); }
  double g2_integral(double a, double b) const {
    if (!(a <= b)) fail(Errc::OrderError, "g2_integral requires a <= b");
    return cache_->between(a, b);
  }

  /// g(tau) / g(t).
  double mean_factor(double tau, double t) const {
    if (tau == t) return 1.0;
    return std::exp(curve_.log_g(tau) - curve_.log_g(t));
  }

  struct Step {
    double factor = 1.0;
    double sd = 0.0;
  };

  Step make_step(double tau, double t) const {
    const double gt = curve_.g(t);
    return {mean_factor(tau, t), sigma_ * std::sqrt(g2_integral(tau, t)) / gt};
  }

  static double advance(const Step& step, double x, double normal) { return step.factor * x + step.sd * normal; }

  /// Wiener coordinate u = x g(t), a Wiener process in the clock sigma^2 int g^2.
  double to_wiener(double x, double t) const { return x * curve_.g(t); }
  double from_wiener(double u, double t) const { return u / curve_.g(t); }
  double clock(double t) const { return sigma_ * sigma_ * g2_prefix(t); }

 private:
  Curve curve_;
  double sigma_;
  std::shared_ptr<const G2Integral<Curve>> cache_;
};

using OUProcess = BasicOUProcess<GrowthCurve>;

/// Gauss-Markov description of the additive-noise process.
template <GrowthLike C>
struct OUSpec {
  BasicOUProcess<C> proc;

  double mean(double) const { return 0.0; }
  double mean_dot(double) const { return 0.0; }
  double k2(double t) const { return 1.0 / proc.curve().g(t); }
  double k2_dot(double t) const { return proc.curve().h(t) / proc.curve().g(t); }
  double k1(double t) const { return proc.sigma() * proc.sigma() * proc.g2_prefix(t) / proc.curve().g(t); }
  double k1_dot(double t) const {
    const double g = proc.curve().g(t);
    const double s2 = proc.sigma() * proc.sigma();
    return s2 * (proc.curve().h(t) * proc.g2_prefix(t) / g + g);
  }
  bool contains(double t) const { return t >= proc.t0() && t < proc.t_star(); }
};

template <GrowthLike C>
OUSpec<C> gm_spec_G(const BasicOUProcess<C>& proc) {
  return {proc};
}

template <GrowthLike C>
TransitionLaw transition_law_G(const BasicOUProcess<C>& proc, double y, double tau, double t) {
  if (!(tau <= t)) fail(Errc::OrderError, "transition_law_G requires tau <= t");
  if (tau < proc.t0()) fail(Errc::DomainError, "tau precedes the initial time");
  if (tau == t) return {y, 0.0};
  const double gt = proc.curve().g(t);
  return {y * proc.mean_factor(tau, t), proc.sigma() * proc.sigma() * proc.g2_integral(tau, t) / (gt * gt)};
}

template <GrowthLike C, class Rng>
double sample_transition_G(const BasicOUProcess<C>& proc, double y, double tau, double t, Rng& rng) {
  const TransitionLaw law = transition_law_G(proc, y, tau, t);
  std::normal_distribution<double> normal;
  return law.mean + std::sqrt(law.variance) * normal(rng);
}

}  // namespace growthfpt
