#pragma once

// Deterministic growth curve
//
//   dx/dt = gamma k^{n(p-1)} x^{1+n(1-p)} [1 - (x/k)^n]^p,   x(t0) = x0,
//
// in the (alpha, eta) parametrization x(t) = x0 g(t0)/g(t), with the
// fertility h(t) = -d/dt ln g(t) that drives both diffusion extensions.

#include <cmath>
#include <concepts>
#include <limits>
#include <sstream>
#include <string>

#include "growthfpt/errors.hpp"

namespace growthfpt {

struct GrowthParams {
  double gamma = 0.5;  ///< rate
  double n = 1.0;      ///< shape
  double p = 1.5;      ///< shape, 0 < p < 1 + 1/n
  double k = 20.0;     ///< carrying capacity
  double x0 = 1.0;     ///< initial size, 0 < x0 < k
  double t0 = 0.0;     ///< initial time
};

struct ReparamCoeffs {
  double alpha = 0.0;  ///< exp(-gamma n)
  double eta = 0.0;
  /// eta^{1-p}, kept as the reciprocal of the eta bracket so the sign survives
  /// when that bracket is negative (only reachable for integer 1/(p-1)).
  double eta_pow = 1.0;
};

enum class CurveRegime { SigmoidSaturating, PlateauThenDecay, PlateauThenGrowth, FiniteTimeCeiling };

constexpr const char* to_string(CurveRegime regime) noexcept {
  switch (regime) {
    case CurveRegime::SigmoidSaturating: return "SigmoidSaturating";
    case CurveRegime::PlateauThenDecay: return "PlateauThenDecay";
    case CurveRegime::PlateauThenGrowth: return "PlateauThenGrowth";
    case CurveRegime::FiniteTimeCeiling: return "FiniteTimeCeiling";
  }
  return "Unknown";
}

struct TimeDomain {
  double t_star = std::numeric_limits<double>::infinity();
  bool finite() const noexcept { return std::isfinite(t_star); }
};

namespace detail {

inline constexpr double kIntegerTol = 1e-9;
// |1-p| at or below which the p -> 1 analytic limit is used.
inline constexpr double kLimitBranch = 1e-8;
// |1-p| at or below which bracket powers go through log1p.
inline constexpr double kLog1pBranch = 1e-5;

inline bool near_integer(double q) noexcept { return std::abs(q - std::round(q)) <= kIntegerTol; }

inline std::string describe(const GrowthParams& p) {
  std::ostringstream os;
  os.precision(17);
  os << "{gamma=" << p.gamma << ", n=" << p.n << ", p=" << p.p << ", k=" << p.k << ", x0=" << p.x0
     << ", t0=" << p.t0 << "}";
  return os.str();
}

}  // namespace detail

/// Real power with the signed rule for negative bases: defined only when the
/// exponent is an integer (within 1e-9), where it equals sign(base)^q |base|^q.
inline double signed_power(double base, double q) {
  if (base >= 0.0) return std::pow(base, q);
  if (!detail::near_integer(q)) {
    std::ostringstream os;
    os << "negative base " << base << " raised to non-integer exponent " << q;
    fail(Errc::DomainError, os.str());
  }
  const double r = std::round(q);
  const double magnitude = std::pow(-base, r);
  return std::fmod(std::abs(r), 2.0) == 1.0 ? -magnitude : magnitude;
}

inline void validate(const GrowthParams& p) {
  const bool finite = std::isfinite(p.gamma) && std::isfinite(p.n) && std::isfinite(p.p) &&
                      std::isfinite(p.k) && std::isfinite(p.x0) && std::isfinite(p.t0);
  if (!finite) fail(Errc::InvalidParams, "non-finite growth parameter in " + detail::describe(p));
  if (!(p.gamma > 0.0)) fail(Errc::InvalidParams, "gamma must be positive");
  if (!(p.n > 0.0)) fail(Errc::InvalidParams, "n must be positive");
  if (!(p.k > 0.0)) fail(Errc::InvalidParams, "k must be positive");
  if (!(p.x0 > 0.0 && p.x0 < p.k)) fail(Errc::InvalidParams, "x0 must satisfy 0 < x0 < k");
  if (!(p.t0 >= 0.0)) fail(Errc::InvalidParams, "t0 must be nonnegative");
  if (!(p.p > 0.0 && p.p < 1.0 + 1.0 / p.n))
    fail(Errc::InvalidParams, "p must satisfy 0 < p < 1 + 1/n, got " + detail::describe(p));
}

/// A_n = (k/x0)^n - 1.
inline double a_n(const GrowthParams& p) { return std::expm1(p.n * std::log(p.k / p.x0)); }

inline ReparamCoeffs reparametrize(const GrowthParams& p) {
  validate(p);
  ReparamCoeffs c;
  c.alpha = std::exp(-p.gamma * p.n);
  const double eps = 1.0 - p.p;
  const double log_a = std::log(a_n(p));
  const double drift = p.n * p.gamma * eps * p.t0;

  if (std::abs(eps) <= detail::kLimitBranch) {
    c.eta = std::exp(-log_a - p.n * p.gamma * p.t0);
    c.eta_pow = 1.0;
    return c;
  }

  // bracket = A_n^{1-p} + n gamma (1-p) t0
  const double bracket_m1 = std::expm1(eps * log_a) + drift;
  const double bracket = 1.0 + bracket_m1;
  if (bracket == 0.0) fail(Errc::DomainError, "eta bracket vanishes for " + detail::describe(p));
  if (bracket > 0.0) {
    c.eta = std::abs(eps) <= detail::kLog1pBranch ? std::exp(-std::log1p(bracket_m1) / eps)
                                                  : std::pow(bracket, -1.0 / eps);
  } else {
    c.eta = signed_power(bracket, -1.0 / eps);
  }
  c.eta_pow = 1.0 / bracket;
  if (!(c.eta > 0.0 && std::isfinite(c.eta)))
    fail(Errc::DomainError, "eta is not a positive real for " + detail::describe(p));
  return c;
}

inline CurveRegime classify_regime(const GrowthParams& p) {
  validate(p);
  const double eps = 1.0 - p.p;
  if (eps <= detail::kLimitBranch) return CurveRegime::SigmoidSaturating;
  const double q = 1.0 / eps;
  if (!detail::near_integer(q)) return CurveRegime::FiniteTimeCeiling;
  const auto r = static_cast<long long>(std::llround(q));
  return r % 2 == 0 ? CurveRegime::PlateauThenDecay : CurveRegime::PlateauThenGrowth;
}

/// Right end of the real-valued domain of the curve. Finite for the
/// FiniteTimeCeiling regime (bracket root, where x reaches k) and for
/// PlateauThenGrowth (g^n reaches zero, x blows up).
inline TimeDomain domain_end(const GrowthParams& p) {
  const CurveRegime regime = classify_regime(p);
  const ReparamCoeffs c = reparametrize(p);
  const double rate = c.eta_pow * p.gamma * p.n * (1.0 - p.p);
  switch (regime) {
    case CurveRegime::FiniteTimeCeiling: return {1.0 / rate};
    case CurveRegime::PlateauThenGrowth: return {(1.0 + c.eta_pow) / rate};
    default: return {};
  }
}

namespace detail {

// [1 + eta^{1-p} ln(alpha) (1-p) t]^{expo_scale/(1-p)}; expo_scale is 1 for
// g and p for h.
inline double bracket_power(const GrowthParams& p, const ReparamCoeffs& c, double t,
                            double expo_scale) {
  const double eps = 1.0 - p.p;
  const double log_alpha = -p.gamma * p.n;
  if (std::abs(eps) <= kLimitBranch) return std::exp(log_alpha * t);
  const double u = c.eta_pow * log_alpha * eps * t;
  if (std::abs(eps) <= kLog1pBranch && u > -1.0)
    return std::exp(expo_scale * std::log1p(u) / eps);
  return signed_power(1.0 + u, expo_scale / eps);
}

inline double gn_value(const GrowthParams& p, const ReparamCoeffs& c, double t) {
  const double gn = c.eta + bracket_power(p, c, t, 1.0);
  if (!(gn > 0.0)) {
    std::ostringstream os;
    os << "g(t)^n = " << gn << " is not positive at t=" << t;
    fail(Errc::DomainError, os.str());
  }
  return gn;
}

inline double h_value(const GrowthParams& p, const ReparamCoeffs& c, double gn, double t) {
  const double log_alpha = -p.gamma * p.n;
  const double eta_pow = std::abs(1.0 - p.p) <= kLimitBranch ? 1.0 : c.eta_pow;
  return -eta_pow * log_alpha * bracket_power(p, c, t, p.p) / (p.n * gn);
}

}  // namespace detail

/// Evaluable growth curve with cached coefficients, regime and domain.
class GrowthCurve {
 public:
  GrowthCurve() : GrowthCurve(GrowthParams{}) {}

  explicit GrowthCurve(const GrowthParams& params)
      : params_(params),
        coeffs_(reparametrize(params)),
        regime_(classify_regime(params)),
        domain_(domain_end(params)) {
    gn0_ = detail::gn_value(params_, coeffs_, params_.t0);
  }

  const GrowthParams& params() const noexcept { return params_; }
  const ReparamCoeffs& coeffs() const noexcept { return coeffs_; }
  CurveRegime regime() const noexcept { return regime_; }
  double t_star() const noexcept { return domain_.t_star; }
  double t0() const noexcept { return params_.t0; }
  double x0() const noexcept { return params_.x0; }

  /// g(t)^n.
  double gn(double t) const {
    check_time(t);
    return detail::gn_value(params_, coeffs_, t);
  }

  double g(double t) const { return std::pow(gn(t), 1.0 / params_.n); }

  double log_g(double t) const { return std::log(gn(t)) / params_.n; }

  double x(double t) const {
    if (domain_.finite() && t == domain_.t_star && regime_ == CurveRegime::FiniteTimeCeiling)
      return params_.x0 * std::pow(gn0_ / coeffs_.eta, 1.0 / params_.n);
    return params_.x0 * std::pow(gn0_ / gn(t), 1.0 / params_.n);
  }

  double h(double t) const {
    const double gn_t = gn(t);
    return detail::h_value(params_, coeffs_, gn_t, t);
  }

  /// Integral of h over [a, b], exactly ln g(a) - ln g(b).
  double h_integral(double a, double b) const {
    if (a == b) return 0.0;
    return std::log(gn(a) / gn(b)) / params_.n;
  }

 private:
  void check_time(double t) const {
    if (domain_.finite() && !(t < domain_.t_star)) {
      std::ostringstream os;
      os.precision(17);
      os << "t=" << t << " is outside the curve domain (t_star=" << domain_.t_star << ")";
      fail(Errc::DomainError, os.str());
    }
  }

  GrowthParams params_;
  ReparamCoeffs coeffs_;
  CurveRegime regime_;
  TimeDomain domain_;
  double gn0_ = 1.0;
};

/// Curve interface consumed by the diffusion processes. GrowthCurve is the
/// production model; tests inject simpler curves (e.g. constant g).
template <class C>
concept GrowthLike = requires(const C& c, double t) {
  { c.g(t) } -> std::convertible_to<double>;
  { c.log_g(t) } -> std::convertible_to<double>;
  { c.h(t) } -> std::convertible_to<double>;
  { c.t0() } -> std::convertible_to<double>;
  { c.x0() } -> std::convertible_to<double>;
  { c.t_star() } -> std::convertible_to<double>;
};

// Free-function forms of the curve operations.

inline double g_eval(const ReparamCoeffs& coeffs, const GrowthParams& params, double t) {
  const TimeDomain dom = domain_end(params);
  if (dom.finite() && !(t < dom.t_star))
    fail(Errc::DomainError, "t is outside the curve domain");
  return std::pow(detail::gn_value(params, coeffs, t), 1.0 / params.n);
}

inline double x_eval(const GrowthParams& params, double t) { return GrowthCurve(params).x(t); }

inline double h_eval(const GrowthParams& params, double t) { return GrowthCurve(params).h(t); }

inline double h_integral(const GrowthParams& params, double a, double b) {
  require(a <= b, Errc::OrderError, "h_integral requires a <= b");
  return GrowthCurve(params).h_integral(a, b);
}

}  // namespace growthfpt
