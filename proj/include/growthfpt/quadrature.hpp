#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "growthfpt/errors.hpp"

namespace growthfpt {

struct QuadratureSpec {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  int max_depth = 40;
};

inline void validate(const QuadratureSpec& spec) {
  require(spec.rel_tol > 0.0 && spec.abs_tol > 0.0, Errc::InvalidParams,
          "quadrature tolerances must be positive");
  require(spec.max_depth >= 1, Errc::InvalidParams, "quadrature max_depth must be >= 1");
}

namespace detail {

inline constexpr int kInitialPanels = 8;

template <class F>
double simpson_recurse(F& f, double a, double fa, double m, double fm, double b, double fb,
                       double whole, double eps, int depth, const QuadratureSpec& spec) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double sum = left + right;
  const double delta = sum - whole;
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * std::abs(sum);
  if (std::abs(delta) <= 15.0 * eps || std::abs(delta) <= floor) return sum + delta / 15.0;
  if (depth >= spec.max_depth)
    fail(Errc::NoConvergence, "adaptive Simpson exhausted max_depth=" + std::to_string(spec.max_depth));
  return simpson_recurse(f, a, fa, lm, flm, m, fm, left, 0.5 * eps, depth + 1, spec) +
         simpson_recurse(f, m, fm, rm, frm, b, fb, right, 0.5 * eps, depth + 1, spec);
}

}  // namespace detail

/// Adaptive Simpson quadrature with Richardson correction. The interval is
/// first cut into a few panels; the coarse total fixes the absolute target
/// max(abs_tol, rel_tol * |coarse|).
template <class F>
double integrate_adaptive(F&& f, double a, double b, const QuadratureSpec& spec = {}) {
  require(a <= b, Errc::OrderError, "integrate_adaptive requires a <= b");
  if (a == b) return 0.0;
  validate(spec);

  constexpr int panels = detail::kInitialPanels;
  const double width = (b - a) / panels;
  double nodes[2 * panels + 1];
  double values[2 * panels + 1];
  for (int i = 0; i <= 2 * panels; ++i) {
    nodes[i] = i == 2 * panels ? b : a + 0.5 * width * i;
    values[i] = f(nodes[i]);
  }
  double coarse[panels];
  double total = 0.0;
  for (int i = 0; i < panels; ++i) {
    const int j = 2 * i;
    coarse[i] = (nodes[j + 2] - nodes[j]) / 6.0 * (values[j] + 4.0 * values[j + 1] + values[j + 2]);
    total += coarse[i];
  }
  const double eps = std::max(spec.abs_tol, spec.rel_tol * std::abs(total)) / panels;
  double result = 0.0;
  for (int i = 0; i < panels; ++i) {
    const int j = 2 * i;
    result += detail::simpson_recurse(f, nodes[j], values[j], nodes[j + 1], values[j + 1],
                                      nodes[j + 2], values[j + 2], coarse[i], eps, 1, spec);
  }
  return result;
}

/// Sum of adaptive integrals over consecutive breakpoints; use it to keep
/// narrow features of long intervals visible to the initial panels.
template <class F>
double integrate_piecewise(F&& f, std::span<const double> breakpoints, const QuadratureSpec& spec = {}) {
  double total = 0.0;
  for (std::size_t i = 1; i < breakpoints.size(); ++i)
    total += integrate_adaptive(f, breakpoints[i - 1], breakpoints[i], spec);
  return total;
}

/// Breakpoints a, a+d, a+2d, a+4d, ... capped at b.
inline std::vector<double> geometric_breakpoints(double a, double b, double first_width) {
  std::vector<double> points{a};
  double width = first_width;
  while (points.back() < b) {
    points.push_back(std::min(b, a + width));
    width *= 2.0;
  }
  return points;
}

/// I(t_i) = integral of f from grid[0] to grid[i].
template <class F>
std::vector<double> prefix_integrals(F&& f, std::span<const double> grid, const QuadratureSpec& spec = {}) {
  require(!grid.empty(), Errc::GridError, "prefix_integrals needs a non-empty grid");
  std::vector<double> out(grid.size(), 0.0);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    require(grid[i] > grid[i - 1], Errc::GridError, "prefix_integrals grid must be strictly increasing");
    out[i] = out[i - 1] + integrate_adaptive(f, grid[i - 1], grid[i], spec);
  }
  return out;
}

/// Upper integration limit kept strictly inside a finite curve domain.
inline double clip_to_domain(double b, double t_star) {
  if (!std::isfinite(t_star)) return b;
  return std::min(b, t_star - 1e-12 * std::abs(t_star));
}

}  // namespace growthfpt
