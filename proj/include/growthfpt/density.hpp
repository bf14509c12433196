#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "growthfpt/errors.hpp"

namespace growthfpt {

/// Uniform time grid t_i = start + i * step, i = 0..steps.
struct TimeGrid {
  double start = 0.0;
  double end = 1.0;
  std::size_t steps = 1;

  static TimeGrid uniform(double start, double end, std::size_t steps) {
    if (!(end > start) || steps == 0) fail(Errc::GridError, "uniform grid needs end > start and steps >= 1");
    return {start, end, steps};
  }

  double step() const { return (end - start) / static_cast<double>(steps); }
  double at(std::size_t i) const { return i == steps ? end : start + step() * static_cast<double>(i); }
  std::size_t size() const { return steps + 1; }

  std::vector<double> nodes() const {
    std::vector<double> out(size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = at(i);
    return out;
  }
};

/// Density tabulated on an increasing grid.
struct DensityCurve {
  std::vector<double> times;
  std::vector<double> values;
  /// Total mass the density would carry on an infinite horizon, when known
  /// (NaN otherwise); mass() below that value is horizon truncation.
  double expected_total = std::numeric_limits<double>::quiet_NaN();

  std::size_t size() const noexcept { return times.size(); }

  /// Trapezoid cumulative integral, starting at 0.
  std::vector<double> cumulative() const {
    std::vector<double> out(times.size(), 0.0);
    for (std::size_t i = 1; i < times.size(); ++i)
      out[i] = out[i - 1] + 0.5 * (times[i] - times[i - 1]) * (values[i] + values[i - 1]);
    return out;
  }

  double mass() const {
    const auto c = cumulative();
    return c.empty() ? 0.0 : c.back();
  }

  /// Mass missing from the tabulated horizon, when the total is known.
  double truncation_mass() const { return expected_total - mass(); }

  std::size_t argmax() const {
    return static_cast<std::size_t>(std::max_element(values.begin(), values.end()) - values.begin());
  }
  double peak_time() const { return times.at(argmax()); }
  double peak_value() const { return values.at(argmax()); }

  /// Linear interpolation, zero outside the grid.
  double interpolate(double t) const {
    if (times.empty() || t < times.front() || t > times.back()) return 0.0;
    const auto it = std::upper_bound(times.begin(), times.end(), t);
    if (it == times.end()) return values.back();
    const auto i = static_cast<std::size_t>(it - times.begin());
    const double w = (t - times[i - 1]) / (times[i] - times[i - 1]);
    return values[i - 1] + w * (values[i] - values[i - 1]);
  }

  void check() const {
    if (times.size() != values.size()) fail(Errc::GridError, "density times and values differ in length");
    for (std::size_t i = 1; i < times.size(); ++i)
      if (!(times[i] > times[i - 1])) fail(Errc::GridError, "density times must be strictly increasing");
  }
};

/// Evaluate a scalar density on each grid node.
template <class F>
DensityCurve tabulate(F&& f, const std::vector<double>& times) {
  DensityCurve out;
  out.times = times;
  out.values.resize(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) out.values[i] = f(times[i]);
  out.check();
  return out;
}

}  // namespace growthfpt
