#pragma once

// Acceptance suite: ten numbered criteria, each reported as one pass/fail
// line. Shared by the acceptance binary and `growthfpt validate`.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "growthfpt/growthfpt.hpp"

namespace growthfpt::validation {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = true;
  std::vector<std::string> notes;

  CriterionResult() = default;
  CriterionResult(int id_, std::string title_) : id(id_), title(std::move(title_)) {}

  void check(bool ok, const std::string& note) {
    passed = passed && ok;
    notes.push_back(std::string(ok ? "ok: " : "FAILED: ") + note);
  }
  void info(const std::string& note) { notes.push_back("info: " + note); }
};

struct Options {
  std::uint64_t seed = 7;
};

namespace detail {

inline std::string fmt(double v, int digits = 6) {
  std::ostringstream os;
  os.precision(digits);
  os << v;
  return os.str();
}

inline GrowthParams pstar(double p) {
  GrowthParams g;
  g.p = p;
  return g;
}

inline const std::vector<double>& regime_ps() {
  static const std::vector<double> ps{1.5, 1.0, 0.75, 2.0 / 3.0, 0.25};
  return ps;
}

/// Growth curve straight from the original closed form, without (alpha, eta).
inline double x_original(const GrowthParams& p, double t) {
  const double eps = 1.0 - p.p;
  const double a = a_n(p);
  double power;
  if (std::abs(eps) <= 1e-8) {
    power = a * std::exp(-p.gamma * p.n * (t - p.t0));
  } else {
    const double bracket = p.gamma * p.n * (p.p - 1.0) * (t - p.t0) + std::pow(a, eps);
    power = signed_power(bracket, 1.0 / eps);
  }
  return p.k / std::pow(1.0 + power, 1.0 / p.n);
}

/// Right side of the growth equation.
inline double growth_rhs(const GrowthParams& p, double x) {
  return p.gamma * std::pow(p.k, p.n * (p.p - 1.0)) * std::pow(x, 1.0 + p.n * (1.0 - p.p)) *
         std::pow(1.0 - std::pow(x / p.k, p.n), p.p);
}

/// Classical RK4 for dx/dt = f(t, x) from (t0, x0), sampled at `probes`.
template <class F>
std::vector<double> rk4(F&& f, double t0, double x0, const std::vector<double>& probes, double h) {
  std::vector<double> out;
  double t = t0;
  double x = x0;
  for (double target : probes) {
    while (t < target) {
      const double step = std::min(h, target - t);
      const double k1 = f(t, x);
      const double k2 = f(t + 0.5 * step, x + 0.5 * step * k1);
      const double k3 = f(t + 0.5 * step, x + 0.5 * step * k2);
      const double k4 = f(t + step, x + step * k3);
      x += step / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      t += step;
    }
    out.push_back(x);
  }
  return out;
}

/// First time the bracket of the curve crosses zero (p < 1), t0 + A^{1-p}/(gamma n (1-p)).
inline double bracket_root(const GrowthParams& p) {
  return p.t0 + std::pow(a_n(p), 1.0 - p.p) / (p.gamma * p.n * (1.0 - p.p));
}

struct Peak {
  double time = 0.0;
  double value = 0.0;
};

/// Maximum of f on [lo, hi] from n samples, refined by a parabola through the
/// best sample and its neighbours.
template <class F>
Peak find_peak(F&& f, double lo, double hi, std::size_t n) {
  const double h = (hi - lo) / static_cast<double>(n);
  std::size_t best = 0;
  double best_v = -1.0;
  std::vector<double> v(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    v[i] = f(lo + h * static_cast<double>(i));
    if (v[i] > best_v) {
      best_v = v[i];
      best = i;
    }
  }
  if (best == 0 || best == n) return {lo + h * static_cast<double>(best), best_v};
  const double a = v[best - 1], b = v[best], c = v[best + 1];
  const double denom = a - 2.0 * b + c;
  const double shift = denom == 0.0 ? 0.0 : 0.5 * (a - c) / denom;
  const double t = lo + h * (static_cast<double>(best) + shift);
  return {t, f(t)};
}

/// Mass of a density on [t0, inf) by adaptive quadrature on doubling panels.
template <class F>
double total_mass(F&& f, double t0, double end, double first_width) {
  const auto pts = geometric_breakpoints(t0, end, first_width);
  return integrate_piecewise(f, pts, QuadratureSpec{1e-10, 1e-15, 50});
}

}  // namespace detail

inline CriterionResult curve_equivalence(const Options& opt) {
  CriterionResult r{1, "Curve equivalence"};
  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);

  double worst = 0.0;
  int sets = 0;
  while (sets < 200) {
    GrowthParams p;
    p.n = 0.5 + 2.5 * u(rng);
    p.gamma = 0.1 + 1.9 * u(rng);
    p.k = 5.0 + 45.0 * u(rng);
    p.x0 = p.k * (0.02 + 0.88 * u(rng));
    p.t0 = 2.0 * u(rng);
    p.p = 0.05 + (1.0 + 1.0 / p.n - 0.1) * u(rng);
    // the (alpha, eta) form needs a positive eta bracket
    if (std::pow(a_n(p), 1.0 - p.p) + p.n * p.gamma * (1.0 - p.p) * p.t0 <= 0.0) continue;
    const GrowthCurve curve(p);
    const double span = p.p < 1.0 ? 0.95 * (detail::bracket_root(p) - p.t0) : 20.0 / p.gamma;
    for (int i = 0; i < 20; ++i) {
      const double t = p.t0 + span * u(rng);
      const double a = curve.x(t);
      const double b = detail::x_original(p, t);
      worst = std::max(worst, std::abs(a - b) / std::abs(b));
    }
    ++sets;
  }
  r.check(worst <= 1e-10, "200 random sets x 20 times, max rel. error " + detail::fmt(worst, 3) + " <= 1e-10");

  for (double pv : detail::regime_ps()) {
    const GrowthParams p = detail::pstar(pv);
    const GrowthCurve curve(p);
    // The growth equation follows the curve up to the bracket root when p < 1;
    // past it, the curve solves dx/dt = h(t) x instead.
    const double end = pv < 1.0 ? 0.95 * detail::bracket_root(p) : 40.0;
    std::vector<double> probes;
    for (int i = 1; i <= 100; ++i) probes.push_back(end * i / 100.0);
    const auto ode = detail::rk4([&](double, double x) { return detail::growth_rhs(p, x); }, p.t0, p.x0, probes, 1e-3);
    double err = 0.0;
    for (std::size_t i = 0; i < probes.size(); ++i)
      err = std::max(err, std::abs(ode[i] - curve.x(probes[i])) / curve.x(probes[i]));
    r.check(err <= 1e-6, "p=" + detail::fmt(pv, 4) + ": RK4 of growth ODE on [0," + detail::fmt(end, 4) +
                             "], max rel. error " + detail::fmt(err, 3));

    if (curve.regime() == CurveRegime::PlateauThenDecay || curve.regime() == CurveRegime::PlateauThenGrowth) {
      const double start = detail::bracket_root(p);
      const double stop = std::isfinite(curve.t_star()) ? start + 0.95 * (curve.t_star() - start) : 40.0;
      std::vector<double> later;
      for (int i = 1; i <= 100; ++i) later.push_back(start + (stop - start) * i / 100.0);
      const auto hx = detail::rk4([&](double t, double x) { return curve.h(t) * x; }, 0.0, p.x0, later, 1e-3);
      double err2 = 0.0;
      for (std::size_t i = 0; i < later.size(); ++i)
        err2 = std::max(err2, std::abs(hx[i] - curve.x(later[i])) / std::abs(curve.x(later[i])));
      r.check(err2 <= 1e-6, "p=" + detail::fmt(pv, 4) + ": RK4 of dx/dt = h x past the bracket root, max rel. error " +
                                detail::fmt(err2, 3));
    }
  }
  return r;
}

inline CriterionResult regime_reproduction(const Options&) {
  CriterionResult r{2, "Regime reproduction"};
  const double k = 20.0;

  {
    const GrowthCurve c(detail::pstar(1.5));
    bool monotone = true;
    double prev = c.x(0.0), sup = prev;
    for (int i = 1; i <= 4000; ++i) {
      const double x = c.x(i * 0.01);
      monotone = monotone && x >= prev;
      sup = std::max(sup, x);
      prev = x;
    }
    r.check(c.regime() == CurveRegime::SigmoidSaturating && monotone && prev >= 0.99 * k && sup <= k * (1.0 + 1e-9),
            "p=1.5 " + std::string(to_string(c.regime())) + ", monotone rise, x(40)=" + detail::fmt(prev, 8));
  }
  {
    const GrowthCurve c(detail::pstar(0.75));
    double peak = 0.0, peak_t = 0.0;
    for (int i = 0; i <= 4000; ++i) {
      const double x = c.x(i * 0.01);
      if (x > peak) peak = x, peak_t = i * 0.01;
    }
    bool decays = true;
    double prev = peak;
    for (double t = peak_t + 0.01; t <= 40.0; t += 0.01) {
      const double x = c.x(t);
      decays = decays && x <= prev;
      prev = x;
    }
    const double x40 = c.x(40.0);
    r.check(c.regime() == CurveRegime::PlateauThenDecay && std::abs(peak - k) <= 0.01 * k && decays && x40 < 1.0,
            "p=0.75 " + std::string(to_string(c.regime())) + ", peak " + detail::fmt(peak, 8) + " at t=" +
                detail::fmt(peak_t, 4) + ", then decreasing, x(40)=" + detail::fmt(x40, 6));
  }
  {
    const GrowthParams p = detail::pstar(2.0 / 3.0);
    const GrowthCurve c(p);
    r.check(c.regime() == CurveRegime::PlateauThenGrowth, "p=2/3 " + std::string(to_string(c.regime())));
    std::string note = "p=2/3 x(40) > 2k: ";
    bool ok = false;
    try {
      const double x40 = x_eval(p, 40.0);
      ok = x40 > 2.0 * k;
      note += "x(40)=" + detail::fmt(x40, 8);
    } catch (const Error& e) {
      note += std::string("x(40) is not defined (") + e.what() + ")";
    }
    r.check(ok, note);
    // where the unbounded increase actually happens
    double cross = NAN;
    for (double t = 0.0; t < c.t_star(); t += 0.001)
      if (c.x(t) > 2.0 * k) {
        cross = t;
        break;
      }
    r.info("p=2/3 x exceeds 2k from t=" + detail::fmt(cross, 6) + " and diverges at t=" + detail::fmt(c.t_star(), 8));
  }
  {
    const GrowthCurve c(detail::pstar(0.25));
    const double ts = c.t_star();
    const double near = c.x(ts * (1.0 - 1e-10));
    r.check(c.regime() == CurveRegime::FiniteTimeCeiling && std::abs(ts - 24.267) <= 1e-3 && std::abs(near - k) <= 1e-3,
            "p=1/4 " + std::string(to_string(c.regime())) + ", t_star=" + detail::fmt(ts, 8) +
                ", x(t_star-)=" + detail::fmt(near, 10));
  }
  return r;
}

inline CriterionResult fpt_mass_identities(const Options&) {
  CriterionResult r{3, "FPT mass identities"};
  const LognormalProcess proc(GrowthCurve(detail::pstar(1.5)), 0.02);
  auto mass_for = [&](double nu) {
    const auto b = proportional_boundary(proc, nu);
    auto f = [&](double t) { return t > 0.0 ? fpt_pdf_lognormal(proc, b, 1.0, 0.0, t) : 0.0; };
    return detail::total_mass(f, 0.0, 1e8, 1.0);
  };
  const double m08 = mass_for(0.8);
  const double m12 = mass_for(1.2);
  r.check(std::abs(m08 - 1.0) <= 1e-4, "nu=0.8 mass " + detail::fmt(m08, 10));
  r.check(std::abs(m12 - 1.0 / 1.2) <= 1e-3, "nu=1.2 mass " + detail::fmt(m12, 10) + " vs 0.833333");
  const auto b = proportional_boundary(proc, 0.8);
  const auto peak =
      detail::find_peak([&](double t) { return fpt_pdf_lognormal(proc, b, 1.0, 0.0, t); }, 1.0, 200.0, 199000);
  r.check(std::abs(peak.time - 41.39) <= 0.1, "nu=0.8 mode at t=" + detail::fmt(peak.time, 6));
  return r;
}

inline CriterionResult volterra_vs_closed(const Options&) {
  CriterionResult r{4, "Volterra vs closed form"};
  auto max_rel_dev = [](const DensityCurve& num, auto&& exact) {
    double peak = 0.0;
    std::vector<double> ex(num.size(), 0.0);
    for (std::size_t i = 1; i < num.size(); ++i) {
      ex[i] = exact(num.times[i]);
      peak = std::max(peak, ex[i]);
    }
    double worst = 0.0;
    for (std::size_t i = 1; i < num.size(); ++i)
      if (ex[i] > 0.01 * peak) worst = std::max(worst, std::abs(num.values[i] - ex[i]) / ex[i]);
    return worst;
  };

  const WienerSpec w{1.0};
  const DanielsBoundary level{0.0, 1.0};
  const auto vw = volterra_fpt(w, bind(w, level), 0.0, 0.0, TimeGrid::uniform(0.0, 5.0, 4000));
  const double dw = max_rel_dev(vw, [&](double t) { return fpt_pdf_gm_closed(w, level, 0.0, 0.0, t); });
  r.check(dw < 0.01, "Wiener, constant boundary 1, 4000 steps: max rel. deviation " + detail::fmt(dw, 3));

  const OUProcess ou(GrowthCurve(detail::pstar(1.5)), 0.1);
  const auto ob = proportional_boundary(ou, 0.8);
  const auto vo = volterra_fpt(gm_spec_G(ou), ob, 1.0, 0.0, TimeGrid::uniform(0.0, 50.0, 4000));
  const double d_o = max_rel_dev(vo, [&](double t) { return fpt_pdf_ou(ou, ob, 1.0, 0.0, t); });
  r.check(d_o < 0.01, "OU, affine boundary 0.8 M_G, 4000 steps: max rel. deviation " + detail::fmt(d_o, 3));

  // Both boundaries above are of Daniels type, where the kernel vanishes and
  // the scheme is exact; the order is observed on non-Daniels problems.
  auto order = [](auto&& solve, double probe) {
    double v[3];
    const std::size_t steps[3] = {1000, 2000, 4000};
    for (int i = 0; i < 3; ++i) v[i] = solve(steps[i]).interpolate(probe);
    return std::log2(std::abs(v[0] - v[1]) / std::abs(v[1] - v[2]));
  };
  const GeneralBoundary curved{[](double t) { return 1.0 + 0.5 * std::sin(t); },
                               [](double t) { return 0.5 * std::cos(t); }};
  const double ow = order([&](std::size_t n) { return volterra_fpt(w, curved, 0.0, 0.0, TimeGrid::uniform(0.0, 4.0, n)); },
                          2.0);
  const auto flat = GeneralBoundary::constant(0.8);
  const double oo = order(
      [&](std::size_t n) { return volterra_fpt(gm_spec_G(ou), flat, 1.0, 0.0, TimeGrid::uniform(0.0, 2.0, n)); }, 0.5);
  r.check(ow >= 0.8 && ow <= 1.25, "Wiener, boundary 1+sin(t)/2: observed order " + detail::fmt(ow, 4) +
                                       " (error ratio " + detail::fmt(std::exp2(ow), 4) + ")");
  r.check(oo >= 0.8 && oo <= 1.25, "OU, constant boundary 0.8: observed order " + detail::fmt(oo, 4) +
                                       " (error ratio " + detail::fmt(std::exp2(oo), 4) + ")");
  r.info("g(t0) = 0 and Psi vanishes on the diagonal, so the O(h) end terms of the rectangle rule cancel");
  return r;
}

inline CriterionResult kernel_vanishing(const Options& opt) {
  CriterionResult r{5, "Kernel vanishing"};
  std::mt19937_64 rng(opt.seed + 5);
  std::uniform_real_distribution<double> u(0.0, 1.0);

  double worst_w = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const WienerSpec w{0.2 + 1.8 * u(rng)};
    const DanielsBoundary d{-2.0 + 4.0 * u(rng), -2.0 + 4.0 * u(rng)};
    const double tau = 10.0 * u(rng);
    const double t = tau + 0.01 + 10.0 * u(rng);
    const auto s = bind(w, d);
    worst_w = std::max(worst_w, std::abs(psi_kernel(w, s, t, s.value(tau), tau)));
  }
  r.check(worst_w < 1e-10, "Wiener, 1000 draws: max |Psi| " + detail::fmt(worst_w, 3));

  const OUProcess ou(GrowthCurve(detail::pstar(1.5)), 0.1);
  const auto spec = gm_spec_G(ou);
  double worst_o = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const DanielsBoundary d{-2.0 + 4.0 * u(rng), -2.0 + 4.0 * u(rng)};
    const double tau = 10.0 * u(rng);
    const double t = tau + 0.01 + 10.0 * u(rng);
    const auto s = bind(spec, d);
    worst_o = std::max(worst_o, std::abs(psi_kernel(spec, s, t, s.value(tau), tau)));
  }
  r.check(worst_o < 1e-10, "OU, 1000 draws: max |Psi| " + detail::fmt(worst_o, 3));
  return r;
}

inline CriterionResult fet_identities(const Options& opt) {
  CriterionResult r{6, "FET identities"};
  auto pdf = [](double t) { return t > 0.0 ? fet_pdf_wiener_symmetric(1.0, 1.0, t) : 0.0; };
  const QuadratureSpec q{1e-12, 1e-15, 50};
  const double mass = integrate_adaptive(pdf, 0.0, 60.0, q);
  const double mean = integrate_adaptive([&](double t) { return t * pdf(t); }, 0.0, 60.0, q);
  r.check(std::abs(mean - 1.0) <= 0.005, "mean exit time " + detail::fmt(mean, 10));
  r.check(std::abs(mass - 1.0) <= 1e-4, "total mass " + detail::fmt(mass, 12));
  double split = 0.0;
  for (int i = 1; i <= 400; ++i) {
    const FetValue v = fet_split_wiener_symmetric(1.0, 1.0, 0.01 * i);
    split = std::max(split, std::abs(v.lower - v.upper));
  }
  r.check(split <= 1e-12, "closed form |gamma1 - gamma2| max " + detail::fmt(split, 3));

  SimConfig cfg;
  cfg.dt = 1e-3;
  cfg.horizon = 20.0;
  cfg.n_paths = 100000;
  cfg.seed = opt.seed;
  const WienerProcess w{1.0, 0.0, 0.0};
  const auto sample =
      estimate_fet(w, GeneralBoundary::constant(-1.0), GeneralBoundary::constant(1.0), cfg);
  const double n = static_cast<double>(sample.hit_times.size());
  const double lower = static_cast<double>(sample.count(ExitSide::Lower));
  const double half_ci = 3.0 * std::sqrt(0.25 * n);
  r.check(std::abs(lower - 0.5 * n) <= half_ci, "MC split " + detail::fmt(lower, 8) + " lower of " +
                                                     detail::fmt(n, 8) + " (3 sigma binomial band " +
                                                     detail::fmt(half_ci, 4) + ")");
  const double m = std::accumulate(sample.hit_times.begin(), sample.hit_times.end(), 0.0) / n;
  double ss = 0.0;
  for (double t : sample.hit_times) ss += (t - m) * (t - m);
  const double se = std::sqrt(ss / (n - 1.0) / n);
  r.check(std::abs(m - 1.0) <= 3.0 * se, "MC mean exit time " + detail::fmt(m, 6) + " (3 SE " + detail::fmt(3 * se, 3) + ")");
  return r;
}

inline CriterionResult mc_agreement(const Options& opt) {
  CriterionResult r{7, "MC agreement"};
  const LognormalProcess proc(GrowthCurve(detail::pstar(1.5)), 0.02);

  SimConfig cfg;
  cfg.dt = 0.5;
  cfg.horizon = 400.0;
  cfg.n_paths = 100000;
  cfg.seed = opt.seed;
  const auto b = proportional_boundary(proc, 0.8);
  const auto sample = estimate_fpt(proc, b, cfg);
  const auto curve = tabulate([&](double t) { return t > 0.0 ? fpt_pdf_lognormal(proc, b, 1.0, 0.0, t) : 0.0; },
                              TimeGrid::uniform(0.0, cfg.horizon, 40000).nodes());
  const auto d = density_distance(sample, curve);
  r.check(d.ks < 0.01, "FPT nu=0.8: KS " + detail::fmt(d.ks, 4));

  SimConfig fc = cfg;
  fc.dt = 0.25;
  fc.horizon = 600.0;
  const ProportionalBand band{0.8, 1.0, 1.2};
  const auto [s1, s2] = band_boundaries(proc, band);
  const auto fet = estimate_fet(proc, s1, s2, fc);
  const auto gamma = tabulate([&](double t) { return t > 0.0 ? fet_pdf_lognormal_band(proc, band, 1.0, 0.0, t) : 0.0; },
                              TimeGrid::uniform(0.0, fc.horizon, 60000).nodes());
  const auto e = density_distance(fet, gamma);
  r.check(e.l1 < 0.05, "FET nu1=0.8 nu2=1.2: L1 " + detail::fmt(e.l1, 4));
  return r;
}

/// Conditional variance with the integrand [g(tau)/g(u)]^2, the reversed ordering.
template <GrowthLike C>
double reversed_variance_G(const BasicOUProcess<C>& proc, double tau, double t) {
  const auto& c = proc.curve();
  const double gt = c.g(tau);
  return proc.sigma() * proc.sigma() *
         integrate_adaptive([&](double u) { return std::pow(gt / c.g(u), 2.0); }, tau, t);
}

inline CriterionResult variance_ordering(const Options& opt) {
  CriterionResult r{8, "Variance ordering"};
  const OUProcess ou(GrowthCurve(detail::pstar(1.5)), 0.1);
  const auto draws = sample_marginals(ou, 1.0, 1000000, opt.seed);
  const double n = static_cast<double>(draws.size());
  const double mean = std::accumulate(draws.begin(), draws.end(), 0.0) / n;
  double m2 = 0.0, m4 = 0.0;
  for (double x : draws) {
    const double d2 = (x - mean) * (x - mean);
    m2 += d2;
    m4 += d2 * d2;
  }
  const double var = m2 / (n - 1.0);
  const double se = std::sqrt((m4 / n - (m2 / n) * (m2 / n)) / n);
  const double exact = transition_law_G(ou, 1.0, 0.0, 1.0).variance;
  const double reversed = reversed_variance_G(ou, 0.0, 1.0);
  r.check(std::abs(exact - 4.104e-2) <= 5e-5, "sigma^2 g(1)^-2 int g^2 = " + detail::fmt(exact, 8));
  r.check(std::abs(var - exact) <= 3.0 * se, "MC variance " + detail::fmt(var, 8) + ", " +
                                                 detail::fmt(std::abs(var - exact) / se, 3) + " SE from it");
  r.check(std::abs(var - reversed) > 10.0 * se, "reversed ordering " + detail::fmt(reversed, 8) + " is " +
                                                   detail::fmt(std::abs(var - reversed) / se, 4) + " SE away");
  return r;
}

inline CriterionResult p_invariance(const Options&) {
  CriterionResult r{9, "p-invariance"};
  // all below the earliest finite t_star among the p values (22.01 for p = 2/3)
  const std::vector<double> elapsed{0.5, 2.0, 10.0, 20.0, 21.5};
  const ProportionalBand band{0.8, 1.0, 1.2};
  double worst_fpt = 0.0, worst_fet = 0.0;
  std::vector<double> ref_fpt, ref_fet;
  for (double pv : detail::regime_ps()) {
    const LognormalProcess proc(GrowthCurve(detail::pstar(pv)), 0.02);
    const auto b = proportional_boundary(proc, 0.8);
    for (std::size_t i = 0; i < elapsed.size(); ++i) {
      const double a = fpt_pdf_lognormal(proc, b, 1.0, 0.0, elapsed[i]);
      const double c = fet_pdf_lognormal_band(proc, band, 1.0, 0.0, elapsed[i]);
      if (ref_fpt.size() < elapsed.size()) {
        ref_fpt.push_back(a);
        ref_fet.push_back(c);
        continue;
      }
      worst_fpt = std::max(worst_fpt, std::abs(a - ref_fpt[i]) / ref_fpt[i]);
      worst_fet = std::max(worst_fet, std::abs(c - ref_fet[i]) / ref_fet[i]);
    }
  }
  r.check(worst_fpt <= 1e-12, "FPT across p: max rel. difference " + detail::fmt(worst_fpt, 3));
  r.check(worst_fet <= 1e-12, "FET across p: max rel. difference " + detail::fmt(worst_fet, 3));
  return r;
}

inline CriterionResult sensitivity(const Options&) {
  CriterionResult r{10, "Sensitivity monotonicity"};
  std::vector<detail::Peak> fpt;
  std::string line = "FPT nu=0.8 peaks (sigma: t, value):";
  for (double sigma : {0.01, 0.02, 0.04}) {
    const LognormalProcess proc(GrowthCurve(detail::pstar(1.5)), sigma);
    const auto b = proportional_boundary(proc, 0.8);
    fpt.push_back(detail::find_peak([&](double t) { return fpt_pdf_lognormal(proc, b, 1.0, 0.0, t); }, 0.5, 400.0,
                                    80000));
    line += " " + detail::fmt(sigma, 3) + ": " + detail::fmt(fpt.back().time, 6) + ", " + detail::fmt(fpt.back().value, 6);
  }
  r.check(fpt[0].time > fpt[1].time && fpt[1].time > fpt[2].time && fpt[0].value < fpt[1].value &&
              fpt[1].value < fpt[2].value,
          line);

  std::vector<double> fet;
  std::string fl = "FET nu2=1.2 sigma=0.02 peak values (nu1):";
  const LognormalProcess proc(GrowthCurve(detail::pstar(1.5)), 0.02);
  for (double nu1 : {0.8, 0.85, 0.9}) {
    const ProportionalBand band{nu1, 1.0, 1.2};
    fet.push_back(detail::find_peak([&](double t) { return fet_pdf_lognormal_band(proc, band, 1.0, 0.0, t); }, 0.05,
                                    300.0, 30000)
                      .value);
    fl += " " + detail::fmt(nu1, 3) + ": " + detail::fmt(fet.back(), 6);
  }
  r.check(fet[0] < fet[1] && fet[1] < fet[2], fl);
  return r;
}

inline std::vector<std::function<CriterionResult(const Options&)>> criteria() {
  return {curve_equivalence, regime_reproduction, fpt_mass_identities, volterra_vs_closed, kernel_vanishing,
          fet_identities,    mc_agreement,        variance_ordering,    p_invariance,       sensitivity};
}

inline const std::vector<std::string>& titles() {
  static const std::vector<std::string> t{"Curve equivalence",    "Regime reproduction", "FPT mass identities",
                                          "Volterra vs closed form", "Kernel vanishing", "FET identities",
                                          "MC agreement",         "Variance ordering",   "p-invariance",
                                          "Sensitivity monotonicity"};
  return t;
}

/// Run criterion `id` (1..10); an escaping error fails it with the message.
inline CriterionResult run_criterion(int id, const Options& opt) {
  try {
    return criteria().at(static_cast<std::size_t>(id - 1))(opt);
  } catch (const std::exception& e) {
    CriterionResult r{id, titles().at(static_cast<std::size_t>(id - 1))};
    r.check(false, std::string("error: ") + e.what());
    return r;
  }
}

inline std::string summary_line(const CriterionResult& r) {
  std::string out = std::string(r.passed ? "PASS" : "FAIL") + "  " + std::to_string(r.id) + ". " + r.title;
  return out;
}

}  // namespace growthfpt::validation
