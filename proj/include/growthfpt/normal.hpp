#pragma once

#include <cmath>
#include <numbers>

namespace growthfpt {

inline constexpr double kLogSqrtTwoPi = 0.91893853320467274178;  // ln sqrt(2*pi)

inline double normal_log_pdf(double x, double mean, double variance) {
  const double z = x - mean;
  return -0.5 * z * z / variance - 0.5 * std::log(variance) - kLogSqrtTwoPi;
}

inline double normal_pdf(double x, double mean, double variance) {
  return std::exp(normal_log_pdf(x, mean, variance));
}

/// Normal CDF through erfc, accurate in both tails.
inline double normal_cdf(double x, double mean, double variance) {
  return 0.5 * std::erfc(-(x - mean) / std::sqrt(2.0 * variance));
}

inline double std_normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

// exp() that flushes hopeless underflow to an exact zero.
inline double guarded_exp(double exponent) {
  return exponent < -745.0 ? 0.0 : std::exp(exponent);
}

}  // namespace growthfpt
