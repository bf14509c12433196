#include "growthfpt/cli/config.hpp"

#include <cmath>
#include <set>

#include <json.hpp>

namespace growthfpt::cli {

namespace {

using json = nlohmann::json;

[[noreturn]] void invalid(const std::string& path, const std::string& what) {
  fail(Errc::ValidationError, path + ": " + what);
}

void only_keys(const json& obj, const std::string& path, const std::set<std::string>& allowed) {
  if (!obj.is_object()) invalid(path.empty() ? "<root>" : path, "expected an object");
  for (const auto& [key, _] : obj.items())
    if (!allowed.contains(key)) invalid(path.empty() ? key : path + "." + key, "unknown key");
}

double number(const json& obj, const std::string& key, const std::string& path, std::optional<double> fallback) {
  const std::string where = path + "." + key;
  if (!obj.contains(key)) {
    if (!fallback) invalid(where, "required");
    return *fallback;
  }
  const json& v = obj.at(key);
  if (!v.is_number()) invalid(where, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) invalid(where, "must be finite");
  return d;
}

std::uint64_t count(const json& obj, const std::string& key, const std::string& path, std::uint64_t fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_unsigned()) invalid(path + "." + key, "expected a nonnegative integer");
  return v.get<std::uint64_t>();
}

Method parse_method(const std::string& s, const std::string& path) {
  if (s == "closed") return Method::Closed;
  if (s == "volterra") return Method::Volterra;
  if (s == "mc") return Method::MonteCarlo;
  invalid(path, "expected closed, volterra or mc, got \"" + s + "\"");
}

void check(RunConfig& c) {
  const GrowthParams& m = c.model;
  if (!(m.gamma > 0.0)) invalid("model.gamma", "must be positive");
  if (!(m.n > 0.0)) invalid("model.n", "must be positive");
  if (!(m.k > 0.0)) invalid("model.k", "must be positive");
  if (!(m.x0 > 0.0 && m.x0 < m.k)) invalid("model.x0", "must satisfy 0 < x0 < k");
  if (!(m.t0 >= 0.0)) invalid("model.t0", "must be nonnegative");
  if (!(m.p > 0.0 && m.p < 1.0 + 1.0 / m.n)) invalid("model.p", "must satisfy 0 < p < 1 + 1/n");
  try {
    (void)reparametrize(m);
  } catch (const Error& e) {
    invalid("model", e.what());
  }
  if (!(c.noise.sigma > 0.0)) invalid("noise.sigma", "must be positive");
  if (!(c.grid.horizon > 0.0)) invalid("grid.horizon", "must be positive");
  if (c.grid.steps < 1) invalid("grid.steps", "must be >= 1");
  const double ts = domain_end(m).t_star;
  if (std::isfinite(ts) && !(m.t0 + c.grid.horizon < ts))
    invalid("grid.horizon", "must end before t_star = " + std::to_string(ts));
  if (!(c.nu > 0.0) || c.nu == 1.0) invalid("fpt.nu", "must be positive and different from 1");
  if (!(c.band.nu1 > 0.0 && c.band.nu1 < c.band.nu && c.band.nu < c.band.nu2))
    invalid("fet", "must satisfy 0 < nu1 < nu < nu2");
  if (!(c.sim.dt > 0.0)) invalid("sim.dt", "must be positive");
  if (!(c.sim.horizon > c.sim.dt)) invalid("sim.horizon", "must exceed sim.dt");
  if (std::isfinite(ts) && !(m.t0 + c.sim.horizon < ts))
    invalid("sim.horizon", "must end before t_star = " + std::to_string(ts));
  if (c.sim.n_paths < 1) invalid("sim.paths", "must be >= 1");
  if (c.bins < 1) invalid("sim.bins", "must be >= 1");
  if (!(c.series.rel_tol > 0.0)) invalid("series.rel_tol", "must be positive");
  if (c.series.n_max < 1) invalid("series.n_max", "must be >= 1");
  if (!(c.quadrature.rel_tol > 0.0)) invalid("quadrature.rel_tol", "must be positive");
  if (!(c.quadrature.abs_tol > 0.0)) invalid("quadrature.abs_tol", "must be positive");
  if (c.quadrature.max_depth < 1) invalid("quadrature.max_depth", "must be >= 1");
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(Errc::ParseError, e.what());
  }
  only_keys(doc, "", {"model", "noise", "grid", "fpt", "fet", "sim", "series", "quadrature", "output"});
  RunConfig c;

  if (!doc.contains("model")) invalid("model", "required");
  const json& m = doc.at("model");
  only_keys(m, "model", {"n", "gamma", "k", "x0", "t0", "p"});
  c.model.n = number(m, "n", "model", std::nullopt);
  c.model.gamma = number(m, "gamma", "model", std::nullopt);
  c.model.k = number(m, "k", "model", std::nullopt);
  c.model.x0 = number(m, "x0", "model", std::nullopt);
  c.model.t0 = number(m, "t0", "model", 0.0);
  c.model.p = number(m, "p", "model", std::nullopt);

  if (!doc.contains("noise")) invalid("noise", "required");
  const json& nz = doc.at("noise");
  only_keys(nz, "noise", {"kind", "sigma"});
  if (nz.contains("kind")) {
    const json& k = nz.at("kind");
    if (k == "multiplicative") c.noise.kind = NoiseKind::Multiplicative;
    else if (k == "additive") c.noise.kind = NoiseKind::Additive;
    else invalid("noise.kind", "expected multiplicative or additive");
  }
  c.noise.sigma = number(nz, "sigma", "noise", std::nullopt);

  if (doc.contains("grid")) {
    const json& g = doc.at("grid");
    only_keys(g, "grid", {"horizon", "steps"});
    c.grid.horizon = number(g, "horizon", "grid", c.grid.horizon);
    c.grid.steps = count(g, "steps", "grid", c.grid.steps);
  }
  if (doc.contains("fpt")) {
    const json& f = doc.at("fpt");
    only_keys(f, "fpt", {"nu", "method"});
    c.nu = number(f, "nu", "fpt", c.nu);
    if (f.contains("method")) {
      if (!f.at("method").is_string()) invalid("fpt.method", "expected a string");
      c.method = parse_method(f.at("method").get<std::string>(), "fpt.method");
    }
  }
  if (doc.contains("fet")) {
    const json& f = doc.at("fet");
    only_keys(f, "fet", {"nu1", "nu", "nu2", "method"});
    c.band.nu1 = number(f, "nu1", "fet", c.band.nu1);
    c.band.nu = number(f, "nu", "fet", c.band.nu);
    c.band.nu2 = number(f, "nu2", "fet", c.band.nu2);
    if (f.contains("method")) {
      if (!f.at("method").is_string()) invalid("fet.method", "expected a string");
      c.method = parse_method(f.at("method").get<std::string>(), "fet.method");
    }
  }
  if (doc.contains("sim")) {
    const json& s = doc.at("sim");
    only_keys(s, "sim", {"dt", "horizon", "paths", "seed", "bridge_correction", "bins", "plot_paths"});
    c.sim.dt = number(s, "dt", "sim", c.sim.dt);
    c.sim.horizon = number(s, "horizon", "sim", c.sim.horizon);
    c.sim.n_paths = count(s, "paths", "sim", c.sim.n_paths);
    c.sim.seed = count(s, "seed", "sim", c.sim.seed);
    c.bins = count(s, "bins", "sim", c.bins);
    c.plot_paths = count(s, "plot_paths", "sim", c.plot_paths);
    if (s.contains("bridge_correction")) {
      if (!s.at("bridge_correction").is_boolean()) invalid("sim.bridge_correction", "expected true or false");
      c.sim.bridge_correction = s.at("bridge_correction").get<bool>();
    }
  }
  if (doc.contains("series")) {
    const json& s = doc.at("series");
    only_keys(s, "series", {"rel_tol", "n_max"});
    c.series.rel_tol = number(s, "rel_tol", "series", c.series.rel_tol);
    c.series.n_max = static_cast<int>(count(s, "n_max", "series", static_cast<std::uint64_t>(c.series.n_max)));
  }
  if (doc.contains("quadrature")) {
    const json& q = doc.at("quadrature");
    only_keys(q, "quadrature", {"rel_tol", "abs_tol", "max_depth"});
    c.quadrature.rel_tol = number(q, "rel_tol", "quadrature", c.quadrature.rel_tol);
    c.quadrature.abs_tol = number(q, "abs_tol", "quadrature", c.quadrature.abs_tol);
    c.quadrature.max_depth =
        static_cast<int>(count(q, "max_depth", "quadrature", static_cast<std::uint64_t>(c.quadrature.max_depth)));
  }
  if (doc.contains("output")) {
    if (!doc.at("output").is_string()) invalid("output", "expected a directory path");
    c.output = doc.at("output").get<std::string>();
  }
  check(c);
  return c;
}

void apply(RunConfig& c, const Overrides& o) {
  if (o.method) c.method = parse_method(*o.method, "--method");
  if (o.nu) c.nu = *o.nu;
  if (o.nu1) c.band.nu1 = *o.nu1;
  if (o.nu2) c.band.nu2 = *o.nu2;
  if (o.sigma) c.noise.sigma = *o.sigma;
  if (o.dt) c.sim.dt = *o.dt;
  if (o.horizon) {
    c.grid.horizon = *o.horizon;
    c.sim.horizon = *o.horizon;
  }
  if (o.steps) c.grid.steps = *o.steps;
  if (o.paths) c.sim.n_paths = *o.paths;
  if (o.seed) c.sim.seed = *o.seed;
  if (o.output) c.output = *o.output;
  check(c);
}

}  // namespace growthfpt::cli
