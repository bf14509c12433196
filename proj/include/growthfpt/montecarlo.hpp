#pragma once

// Path simulation by exact transitions and empirical passage/exit times.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "growthfpt/density.hpp"
#include "growthfpt/errors.hpp"
#include "growthfpt/gauss_markov.hpp"

namespace growthfpt {

struct SimConfig {
  double dt = 0.01;
  double horizon = 10.0;
  std::size_t n_paths = 1000;
  std::uint64_t seed = 1;
  bool bridge_correction = true;
};

inline void validate(const SimConfig& cfg, double t0, double t_star) {
  if (!(cfg.dt > 0.0 && std::isfinite(cfg.dt))) fail(Errc::ConfigError, "sim.dt must be positive");
  if (!(cfg.horizon > cfg.dt && std::isfinite(cfg.horizon))) fail(Errc::ConfigError, "sim.horizon must exceed sim.dt");
  if (cfg.n_paths < 1) fail(Errc::ConfigError, "sim.paths must be >= 1");
  if (std::isfinite(t_star) && !(t0 + cfg.horizon < t_star))
    fail(Errc::ConfigError, "sim.horizon reaches the end of the curve domain");
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed of the random substream owned by one path.
inline std::uint64_t path_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

/// Hardware threads, capped by GROWTHFPT_THREADS when set to a positive integer.
inline unsigned worker_count() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("GROWTHFPT_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && cap > 0) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return n;
}

/// Run fn(i) for i in [0, n) on the worker pool. Work items must only write
/// to slots owned by their index.
template <class F>
void parallel_for(std::size_t n, F&& fn) {
  const unsigned threads = static_cast<unsigned>(std::min<std::size_t>(worker_count(), n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  constexpr std::size_t chunk = 256;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t begin = next.fetch_add(chunk);
      if (begin >= n) return;
      const std::size_t end = std::min(n, begin + chunk);
      for (std::size_t i = begin; i < end; ++i) fn(i);
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(threads - 1);
  for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
}

/// A process simulated by exact transitions, with a monotone map to a Wiener
/// coordinate whose variance accrues along clock(t).
template <class P>
concept Simulable = requires(const P& p, const typename P::Step& step, double t, double x) {
  { p.t0() } -> std::convertible_to<double>;
  { p.x0() } -> std::convertible_to<double>;
  { p.t_star() } -> std::convertible_to<double>;
  { p.make_step(t, t) } -> std::same_as<typename P::Step>;
  { P::advance(step, x, x) } -> std::convertible_to<double>;
  { p.to_wiener(x, t) } -> std::convertible_to<double>;
  { p.clock(t) } -> std::convertible_to<double>;
};

/// Wiener process with variance sigma^2 per unit time.
struct WienerProcess {
  double sigma = 1.0;
  double start = 0.0;
  double origin = 0.0;

  struct Step {
    double sd = 0.0;
  };

  double t0() const { return origin; }
  double x0() const { return start; }
  double t_star() const { return std::numeric_limits<double>::infinity(); }
  Step make_step(double tau, double t) const { return {sigma * std::sqrt(t - tau)}; }
  static double advance(const Step& step, double x, double normal) { return x + step.sd * normal; }
  double to_wiener(double x, double) const { return x; }
  double clock(double t) const { return sigma * sigma * t; }
};

namespace detail {

template <Simulable P>
struct StepTable {
  std::vector<double> times;
  std::vector<typename P::Step> steps;
  std::vector<double> clock;

  StepTable(const P& proc, const SimConfig& cfg) {
    validate(cfg, proc.t0(), proc.t_star());
    const auto n = static_cast<std::size_t>(std::ceil(cfg.horizon / cfg.dt - 1e-9));
    times.resize(n + 1);
    for (std::size_t i = 0; i <= n; ++i) times[i] = proc.t0() + cfg.dt * static_cast<double>(i);
    times[n] = proc.t0() + cfg.horizon;
    steps.reserve(n);
    clock.resize(n + 1);
    for (std::size_t i = 0; i <= n; ++i) clock[i] = proc.clock(times[i]);
    for (std::size_t i = 0; i < n; ++i) steps.push_back(proc.make_step(times[i], times[i + 1]));
  }
};

}  // namespace detail

struct PathEnsemble {
  std::vector<double> times;
  std::vector<std::vector<double>> paths;  ///< paths[i][j] at times[j]
};

/// Simulate cfg.n_paths paths, recording every `stride`-th grid node.
template <Simulable P>
PathEnsemble simulate_paths(const P& proc, const SimConfig& cfg, std::size_t stride = 1) {
  if (stride == 0) fail(Errc::ConfigError, "stride must be >= 1");
  const detail::StepTable<P> table(proc, cfg);
  const std::size_t n = table.steps.size();
  PathEnsemble out;
  for (std::size_t j = 0; j <= n; j += stride) out.times.push_back(table.times[j]);
  if (n % stride != 0) out.times.push_back(table.times[n]);
  out.paths.assign(cfg.n_paths, std::vector<double>(out.times.size()));
  parallel_for(cfg.n_paths, [&](std::size_t i) {
    std::mt19937_64 rng(path_seed(cfg.seed, i));
    std::normal_distribution<double> normal;
    auto& path = out.paths[i];
    double x = proc.x0();
    path[0] = x;
    std::size_t slot = 1;
    for (std::size_t j = 0; j < n; ++j) {
      x = P::advance(table.steps[j], x, normal(rng));
      if ((j + 1) % stride == 0 || j + 1 == n) path[slot++] = x;
    }
  });
  return out;
}

/// n exact draws of X(t) given X(t0) = x0, one substream per draw.
template <Simulable P>
std::vector<double> sample_marginals(const P& proc, double t, std::size_t n, std::uint64_t seed) {
  const auto step = proc.make_step(proc.t0(), t);
  std::vector<double> out(n);
  parallel_for(n, [&](std::size_t i) {
    std::mt19937_64 rng(path_seed(seed, i));
    std::normal_distribution<double> normal;
    out[i] = P::advance(step, proc.x0(), normal(rng));
  });
  return out;
}

enum class ExitSide : std::uint8_t { Lower, Upper };

struct EmpiricalHittingSample {
  std::vector<double> hit_times;
  std::vector<ExitSide> exit_sides;  ///< exit problems only, aligned with hit_times
  std::size_t censored_count = 0;
  std::size_t n_paths = 0;

  double hit_fraction() const {
    return n_paths == 0 ? 0.0 : static_cast<double>(hit_times.size()) / static_cast<double>(n_paths);
  }
  std::size_t count(ExitSide side) const {
    return static_cast<std::size_t>(std::count(exit_sides.begin(), exit_sides.end(), side));
  }
};

namespace detail {

inline constexpr double kNoHit = std::numeric_limits<double>::quiet_NaN();

// Probability that a Wiener bridge between two points at distances d0, d1 > 0
// from a boundary touches it within a step of clock length dclock.
inline double bridge_probability(double d0, double d1, double dclock) {
  return std::exp(-2.0 * d0 * d1 / dclock);
}

}  // namespace detail

/// Empirical first passage times through `boundary` on [t0, t0 + horizon].
/// The bridge test uses the boundary value at both ends of each step.
template <Simulable P, Boundary B>
EmpiricalHittingSample estimate_fpt(const P& proc, const B& boundary, const SimConfig& cfg) {
  const detail::StepTable<P> table(proc, cfg);
  const std::size_t n = table.steps.size();
  std::vector<double> bw(n + 1);
  for (std::size_t j = 0; j <= n; ++j) bw[j] = proc.to_wiener(boundary.value(table.times[j]), table.times[j]);
  const double w0 = proc.to_wiener(proc.x0(), proc.t0());
  if (w0 == bw[0]) fail(Errc::StartOnBoundary, "start lies on the boundary");
  const double sign = w0 < bw[0] ? 1.0 : -1.0;

  std::vector<double> hits(cfg.n_paths, detail::kNoHit);
  parallel_for(cfg.n_paths, [&](std::size_t i) {
    std::mt19937_64 rng(path_seed(cfg.seed, i));
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> uniform;
    double x = proc.x0();
    double d = sign * (bw[0] - w0);
    for (std::size_t j = 0; j < n; ++j) {
      x = P::advance(table.steps[j], x, normal(rng));
      const double t1 = table.times[j + 1];
      const double d1 = sign * (bw[j + 1] - proc.to_wiener(x, t1));
      if (d1 <= 0.0) {
        hits[i] = table.times[j] + (t1 - table.times[j]) * d / (d - d1);
        return;
      }
      if (cfg.bridge_correction) {
        const double p = detail::bridge_probability(d, d1, table.clock[j + 1] - table.clock[j]);
        if (uniform(rng) < p) {
          hits[i] = 0.5 * (table.times[j] + t1);
          return;
        }
      }
      d = d1;
    }
  });

  EmpiricalHittingSample out;
  out.n_paths = cfg.n_paths;
  for (double h : hits) {
    if (std::isnan(h)) ++out.censored_count;
    else out.hit_times.push_back(h);
  }
  return out;
}

/// Empirical first exit times from the band (s1, s2); each step tests the
/// lower boundary before the upper one.
template <Simulable P, Boundary B1, Boundary B2>
EmpiricalHittingSample estimate_fet(const P& proc, const B1& s1, const B2& s2, const SimConfig& cfg) {
  const detail::StepTable<P> table(proc, cfg);
  const std::size_t n = table.steps.size();
  std::vector<double> lo(n + 1), hi(n + 1);
  for (std::size_t j = 0; j <= n; ++j) {
    const double t = table.times[j];
    lo[j] = proc.to_wiener(s1.value(t), t);
    hi[j] = proc.to_wiener(s2.value(t), t);
    if (!(lo[j] < hi[j])) fail(Errc::BandCrossing, "lower boundary meets the upper boundary");
  }
  const double w0 = proc.to_wiener(proc.x0(), proc.t0());
  if (!(lo[0] < w0 && w0 < hi[0])) fail(Errc::StartOutsideBand, "start lies outside the open band");

  std::vector<double> hits(cfg.n_paths, detail::kNoHit);
  std::vector<ExitSide> sides(cfg.n_paths, ExitSide::Lower);
  parallel_for(cfg.n_paths, [&](std::size_t i) {
    std::mt19937_64 rng(path_seed(cfg.seed, i));
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> uniform;
    double x = proc.x0();
    double dl = w0 - lo[0];
    double du = hi[0] - w0;
    for (std::size_t j = 0; j < n; ++j) {
      x = P::advance(table.steps[j], x, normal(rng));
      const double ta = table.times[j];
      const double tb = table.times[j + 1];
      const double w = proc.to_wiener(x, tb);
      const double dl1 = w - lo[j + 1];
      const double du1 = hi[j + 1] - w;
      if (dl1 <= 0.0) {
        hits[i] = ta + (tb - ta) * dl / (dl - dl1);
        sides[i] = ExitSide::Lower;
        return;
      }
      if (du1 <= 0.0) {
        hits[i] = ta + (tb - ta) * du / (du - du1);
        sides[i] = ExitSide::Upper;
        return;
      }
      if (cfg.bridge_correction) {
        const double dclock = table.clock[j + 1] - table.clock[j];
        if (uniform(rng) < detail::bridge_probability(dl, dl1, dclock)) {
          hits[i] = 0.5 * (ta + tb);
          sides[i] = ExitSide::Lower;
          return;
        }
        if (uniform(rng) < detail::bridge_probability(du, du1, dclock)) {
          hits[i] = 0.5 * (ta + tb);
          sides[i] = ExitSide::Upper;
          return;
        }
      }
      dl = dl1;
      du = du1;
    }
  });

  EmpiricalHittingSample out;
  out.n_paths = cfg.n_paths;
  for (std::size_t i = 0; i < cfg.n_paths; ++i) {
    if (std::isnan(hits[i])) {
      ++out.censored_count;
    } else {
      out.hit_times.push_back(hits[i]);
      out.exit_sides.push_back(sides[i]);
    }
  }
  return out;
}

/// Histogram density of the hit times on `bins` equal bins of [lo, hi],
/// normalized by the number of paths (censored paths included).
inline DensityCurve histogram(const EmpiricalHittingSample& sample, double lo, double hi, std::size_t bins) {
  if (sample.n_paths == 0) fail(Errc::EmptySample, "sample has no paths");
  if (!(hi > lo) || bins == 0) fail(Errc::GridError, "histogram needs hi > lo and bins >= 1");
  const double width = (hi - lo) / static_cast<double>(bins);
  std::vector<double> counts(bins, 0.0);
  for (double t : sample.hit_times) {
    if (t < lo || t > hi) continue;
    const auto b = std::min(bins - 1, static_cast<std::size_t>((t - lo) / width));
    counts[b] += 1.0;
  }
  DensityCurve out;
  for (std::size_t b = 0; b < bins; ++b) {
    out.times.push_back(lo + width * (static_cast<double>(b) + 0.5));
    out.values.push_back(counts[b] / (static_cast<double>(sample.n_paths) * width));
  }
  return out;
}

struct DistanceResult {
  double l1 = 0.0;
  double ks = 0.0;
};

namespace detail {

// Accumulated mass of a tabulated density at t, by linear interpolation of
// its trapezoid cumulative.
inline double cumulative_at(const DensityCurve& curve, const std::vector<double>& cum, double t) {
  const auto& ts = curve.times;
  if (t <= ts.front()) return 0.0;
  if (t >= ts.back()) return cum.back();
  const auto i = static_cast<std::size_t>(std::upper_bound(ts.begin(), ts.end(), t) - ts.begin());
  const double w = (t - ts[i - 1]) / (ts[i] - ts[i - 1]);
  // exact integral of the linear interpolant over [ts[i-1], t]
  const double v0 = curve.values[i - 1];
  const double vt = v0 + w * (curve.values[i] - v0);
  return cum[i - 1] + 0.5 * (t - ts[i - 1]) * (v0 + vt);
}

}  // namespace detail

/// L1 distance between the histogram density (100 bins over the analytic
/// grid) and the bin-averaged analytic density, and the Kolmogorov-Smirnov
/// distance between the empirical and accumulated analytic distributions.
inline DistanceResult density_distance(const EmpiricalHittingSample& sample, const DensityCurve& analytic,
                                       std::size_t bins = 100) {
  if (sample.n_paths == 0) fail(Errc::EmptySample, "sample has no paths");
  if (analytic.size() < 2) fail(Errc::GridError, "analytic density needs at least two nodes");
  const double lo = analytic.times.front();
  const double hi = analytic.times.back();
  const auto cum = analytic.cumulative();
  const DensityCurve hist = histogram(sample, lo, hi, bins);
  const double width = (hi - lo) / static_cast<double>(bins);

  DistanceResult out;
  for (std::size_t b = 0; b < bins; ++b) {
    const double a = lo + width * static_cast<double>(b);
    const double mass = detail::cumulative_at(analytic, cum, a + width) - detail::cumulative_at(analytic, cum, a);
    out.l1 += std::abs(hist.values[b] * width - mass);
  }

  std::vector<double> hits;
  for (double t : sample.hit_times)
    if (t >= lo && t <= hi) hits.push_back(t);
  std::sort(hits.begin(), hits.end());
  const double n = static_cast<double>(sample.n_paths);
  for (std::size_t i = 0; i < hits.size(); ++i) {
    const double f = detail::cumulative_at(analytic, cum, hits[i]);
    out.ks = std::max({out.ks, std::abs(static_cast<double>(i) / n - f), std::abs(static_cast<double>(i + 1) / n - f)});
  }
  out.ks = std::max(out.ks, std::abs(static_cast<double>(hits.size()) / n - cum.back()));
  return out;
}

/// Integral of |a - b| over a's grid, b interpolated linearly.
inline double l1_distance(const DensityCurve& a, const DensityCurve& b) {
  double total = 0.0;
  for (std::size_t i = 1; i < a.size(); ++i) {
    const double e0 = std::abs(a.values[i - 1] - b.interpolate(a.times[i - 1]));
    const double e1 = std::abs(a.values[i] - b.interpolate(a.times[i]));
    total += 0.5 * (a.times[i] - a.times[i - 1]) * (e0 + e1);
  }
  return total;
}

}  // namespace growthfpt
