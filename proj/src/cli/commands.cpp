#include "growthfpt/cli/commands.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <type_traits>
#include <vector>

#include "growthfpt/cli/csv.hpp"
#include "growthfpt/cli/svg.hpp"
#include "growthfpt/growthfpt.hpp"

namespace growthfpt::cli {

namespace {

std::string out_path(const RunConfig& c, const std::string& name) {
  std::filesystem::create_directories(c.output);
  return (std::filesystem::path(c.output) / name).string();
}

void emit(const RunConfig& c, const std::string& stem, const Table& table, const std::string& title,
                 const std::string& ylabel, std::vector<Series> series, std::ostream& log) {
  write_text(out_path(c, stem + ".csv"), to_csv(table));
  write_text(out_path(c, stem + ".svg"), render_svg(title, "t", ylabel, series));
  log << "wrote " << out_path(c, stem + ".csv") << " and " << stem << ".svg\n";
}

TimeGrid eval_grid(const RunConfig& c) {
  return TimeGrid::uniform(c.model.t0, c.model.t0 + c.grid.horizon, c.grid.steps);
}

const char* method_name(Method m) {
  switch (m) {
    case Method::Closed: return "closed";
    case Method::Volterra: return "volterra";
    case Method::MonteCarlo: return "mc";
  }
  return "closed";
}

/// Call f with the process selected by the noise block.
template <class F>
decltype(auto) with_process(const RunConfig& c, F&& f) {
  const GrowthCurve curve(c.model);
  if (c.noise.kind == NoiseKind::Multiplicative) return f(LognormalProcess(curve, c.noise.sigma));
  const double horizon = std::max(c.grid.horizon, c.sim.horizon) + 1.0;
  return f(OUProcess(curve, c.noise.sigma, horizon));
}

/// Boundary of the multiplicative process expressed in its Wiener coordinate.
template <GrowthLike C>
GeneralBoundary wiener_boundary(const BasicLognormalProcess<C>& proc, const ExpBoundary<C>& b) {
  const double half_s2 = 0.5 * proc.sigma() * proc.sigma();
  return {[proc, b](double t) { return proc.to_wiener(b.value(t), t); },
          [slope = b.B + half_s2](double) { return slope; }};
}

Table density_table(const DensityCurve& d) {
  Table t;
  t.add("t", d.times);
  t.add("pdf", d.values);
  return t;
}

DensityCurve mc_density(const EmpiricalHittingSample& s, const RunConfig& c) {
  return histogram(s, c.model.t0, c.model.t0 + c.sim.horizon, c.bins);
}

EmpiricalHittingSample side_only(const EmpiricalHittingSample& s, ExitSide side) {
  EmpiricalHittingSample out;
  out.n_paths = s.n_paths;
  for (std::size_t i = 0; i < s.hit_times.size(); ++i)
    if (s.exit_sides[i] == side) {
      out.hit_times.push_back(s.hit_times[i]);
      out.exit_sides.push_back(side);
    }
  return out;
}

void report_mc(const EmpiricalHittingSample& s, std::ostream& log) {
  log << "paths " << s.n_paths << ", hit fraction " << format_number(s.hit_fraction()) << ", censored "
      << s.censored_count;
  if (!s.exit_sides.empty())
    log << ", lower " << s.count(ExitSide::Lower) << ", upper " << s.count(ExitSide::Upper);
  log << "\n";
}

std::string label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

}  // namespace

int run_curve(const RunConfig& c, std::ostream& log) {
  const GrowthCurve curve(c.model);
  const auto ts = eval_grid(c).nodes();
  Table t;
  t.add("t", ts);
  std::vector<double> x, g, h;
  for (double v : ts) {
    x.push_back(curve.x(v));
    g.push_back(curve.g(v));
    h.push_back(curve.h(v));
  }
  t.add("x", x);
  t.add("g", g);
  t.add("h", h);
  emit(c, "curve", t, "growth curve", "x(t)", {{"x", ts, x}}, log);
  return kExitOk;
}

int run_regime(const RunConfig& c, std::ostream& log) {
  const GrowthCurve curve(c.model);
  const std::string line =
      std::string(to_string(curve.regime())) + ", t_star = " + format_number(curve.t_star()) + "\n";
  log << line;
  write_text(out_path(c, "regime.txt"), line);
  return kExitOk;
}

int run_paths(const RunConfig& c, std::ostream& log) {
  return with_process(c, [&](const auto& proc) {
    const auto n = static_cast<std::size_t>(std::ceil(c.sim.horizon / c.sim.dt - 1e-9));
    const std::size_t stride = std::max<std::size_t>(1, n / 2000);
    const PathEnsemble e = simulate_paths(proc, c.sim, stride);
    const GrowthCurve& curve = proc.curve();
    Table t;
    t.add("t", e.times);
    std::vector<double> x;
    for (double v : e.times) x.push_back(curve.x(v));
    t.add("x", x);
    std::vector<Series> series;
    for (std::size_t i = 0; i < e.paths.size(); ++i) {
      t.add("path_" + std::to_string(i), e.paths[i]);
      if (i < c.plot_paths) series.push_back({"path " + std::to_string(i), e.times, e.paths[i], false, 0.6});
    }
    series.push_back({"x(t)", e.times, x});
    emit(c, "paths", t, "sample paths", "X(t)", std::move(series), log);
    return kExitOk;
  });
}

int run_fpt(const RunConfig& c, std::ostream& log) {
  return with_process(c, [&](const auto& proc) {
    using P = std::decay_t<decltype(proc)>;
    const double x0 = c.model.x0, t0 = c.model.t0;
    const auto b = proportional_boundary(proc, c.nu);
    DensityCurve d;
    if (c.method == Method::MonteCarlo) {
      const auto s = estimate_fpt(proc, b, c.sim);
      report_mc(s, log);
      d = mc_density(s, c);
    } else if (c.method == Method::Closed) {
      d = tabulate(
          [&](double t) {
            if (t <= t0) return 0.0;
            if constexpr (std::is_same_v<P, LognormalProcess>) return fpt_pdf_lognormal(proc, b, x0, t0, t);
            else return fpt_pdf_ou(proc, b, x0, t0, t);
          },
          eval_grid(c).nodes());
    } else if constexpr (std::is_same_v<P, LognormalProcess>) {
      d = volterra_fpt(WienerSpec{proc.sigma()}, wiener_boundary(proc, b), proc.to_wiener(x0, t0), t0,
                       eval_grid(c));
    } else {
      d = volterra_fpt(gm_spec_G(proc), b, x0, t0, eval_grid(c));
    }
    if (c.method != Method::MonteCarlo) log << "mass on [t0, t0 + horizon] " << format_number(d.mass()) << ", ";
    log << "peak " << format_number(d.peak_value()) << " at t = " << format_number(d.peak_time()) << "\n";
    const std::string stem = std::string("fpt_") + method_name(c.method);
    emit(c, stem, density_table(d), "first passage time density, nu = " + label(c.nu),
                 "g(t)", {{"pdf", d.times, d.values}}, log);
    return kExitOk;
  });
}

int run_fet(const RunConfig& c, std::ostream& log) {
  return with_process(c, [&](const auto& proc) {
    using P = std::decay_t<decltype(proc)>;
    const double x0 = c.model.x0, t0 = c.model.t0;
    const ProportionalBand band = c.band;
    const auto [s1, s2] = [&] {
      if constexpr (std::is_same_v<P, LognormalProcess>) return band_boundaries(proc, band);
      else return band_boundaries(proc, OUBand{band.nu1, band.nu, band.nu2, 0.0}, x0, t0);
    }();
    FetCurves f;
    if (c.method == Method::MonteCarlo) {
      const auto s = estimate_fet(proc, s1, s2, c.sim);
      report_mc(s, log);
      f.gamma = mc_density(s, c);
      f.gamma1 = mc_density(side_only(s, ExitSide::Lower), c);
      f.gamma2 = mc_density(side_only(s, ExitSide::Upper), c);
    } else if (c.method == Method::Closed) {
      const auto ts = eval_grid(c).nodes();
      std::vector<double> lo, hi, tot;
      for (double t : ts) {
        FetValue v{0.0, 0.0};
        if (t > t0) {
          if constexpr (std::is_same_v<P, LognormalProcess>)
            v = fet_split_lognormal_band(proc, band, x0, t0, t, c.series);
          else
            v = fet_split_ou_band(proc, band.nu1, band.nu, band.nu2, 0.0, x0, t0, t, c.series);
        }
        lo.push_back(v.lower);
        hi.push_back(v.upper);
        tot.push_back(v.total());
      }
      f.gamma1 = {ts, lo};
      f.gamma2 = {ts, hi};
      f.gamma = {ts, tot};
    } else if constexpr (std::is_same_v<P, LognormalProcess>) {
      f = volterra_fet(WienerSpec{proc.sigma()}, wiener_boundary(proc, s1), wiener_boundary(proc, s2),
                       proc.to_wiener(x0, t0), t0, eval_grid(c));
    } else {
      f = volterra_fet(gm_spec_G(proc), s1, s2, x0, t0, eval_grid(c));
    }
    if (c.method != Method::MonteCarlo)
      log << "mass on [t0, t0 + horizon] " << format_number(f.gamma.mass()) << " (lower "
          << format_number(f.gamma1.mass()) << ", upper " << format_number(f.gamma2.mass()) << "), ";
    log << "peak " << format_number(f.gamma.peak_value()) << " at t = " << format_number(f.gamma.peak_time()) << "\n";
    Table t = density_table(f.gamma);
    t.add("gamma1", f.gamma1.values);
    t.add("gamma2", f.gamma2.values);
    const std::string stem = std::string("fet_") + method_name(c.method);
    emit(c, stem, t,
                 "first exit time density, nu1 = " + label(band.nu1) + ", nu2 = " + label(band.nu2),
                 "density",
                 {{"gamma", f.gamma.times, f.gamma.values},
                  {"gamma1 (lower)", f.gamma1.times, f.gamma1.values},
                  {"gamma2 (upper)", f.gamma2.times, f.gamma2.values}},
                 log);
    return kExitOk;
  });
}

int run_validate(const validation::Options& opt, const std::string& out, std::ostream& log) {
  std::string report;
  bool all = true;
  for (int id = 1; id <= 10; ++id) {
    const auto r = validation::run_criterion(id, opt);
    std::string block = validation::summary_line(r) + "\n";
    for (const auto& n : r.notes) block += "      " + n + "\n";
    log << block << std::flush;
    report += block;
    all = all && r.passed;
  }
  if (!out.empty()) {
    std::filesystem::create_directories(out);
    write_text((std::filesystem::path(out) / "validation.txt").string(), report);
  }
  return all ? kExitOk : kExitFailure;
}

}  // namespace growthfpt::cli
