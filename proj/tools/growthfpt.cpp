// growthfpt <command> --config <path> [flags] --out <dir>
//
// Exit status: 0 success, 1 computation or validation failure, 2 bad
// configuration or command line.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "growthfpt/cli/commands.hpp"

namespace {

using namespace growthfpt;

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) fail(Errc::ConfigError, "cannot read config " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

bool is_config_error(Errc e) {
  return e == Errc::ParseError || e == Errc::ValidationError || e == Errc::ConfigError || e == Errc::InvalidParams;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Growth-curve diffusions: first passage and first exit time densities"};
  app.require_subcommand(1);

  std::string config_path;
  cli::Overrides o;
  std::string out;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON run configuration")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out, "output directory (overrides the config)");
  };
  auto add_sim = [&](CLI::App* sub) {
    sub->add_option("--paths", o.paths, "number of simulated paths");
    sub->add_option("--seed", o.seed, "master seed");
    sub->add_option("--dt", o.dt, "simulation step");
  };
  auto add_density = [&](CLI::App* sub) {
    sub->add_option("--method", o.method, "closed, volterra or mc")
        ->check(CLI::IsMember({"closed", "volterra", "mc"}));
    sub->add_option("--horizon", o.horizon, "time span after t0 (grid and simulation)");
    sub->add_option("--steps", o.steps, "grid steps");
    sub->add_option("--sigma", o.sigma, "noise intensity");
  };

  auto* curve = app.add_subcommand("curve", "tabulate x(t), g(t), h(t)");
  add_common(curve);
  curve->add_option("--horizon", o.horizon, "time span after t0");
  curve->add_option("--steps", o.steps, "grid steps");
  auto* regime = app.add_subcommand("regime", "print the regime and t_star");
  add_common(regime);
  auto* paths = app.add_subcommand("paths", "simulate sample paths");
  add_common(paths);
  add_sim(paths);
  paths->add_option("--horizon", o.horizon, "time span after t0");
  paths->add_option("--sigma", o.sigma, "noise intensity");
  auto* fpt = app.add_subcommand("fpt", "first passage time density through nu times the mean");
  add_common(fpt);
  add_density(fpt);
  add_sim(fpt);
  fpt->add_option("--nu", o.nu, "boundary proportion");
  auto* fet = app.add_subcommand("fet", "first exit time density from the band [nu1, nu2] times the mean");
  add_common(fet);
  add_density(fet);
  add_sim(fet);
  fet->add_option("--nu1", o.nu1, "lower band proportion");
  fet->add_option("--nu2", o.nu2, "upper band proportion");
  auto* validate = app.add_subcommand("validate", "run the acceptance suite");
  std::uint64_t vseed = validation::Options{}.seed;
  validate->add_option("--config", config_path, "accepted and ignored");
  validate->add_option("--out", out, "directory for validation.txt");
  validate->add_option("--seed", vseed, "seed for the random checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : cli::kExitConfig;
  }

  try {
    if (validate->parsed()) return cli::run_validate(validation::Options{vseed}, out, std::cout);

    if (!out.empty()) o.output = out;
    cli::RunConfig cfg = cli::parse_config(read_file(config_path));
    cli::apply(cfg, o);

    if (curve->parsed()) return cli::run_curve(cfg, std::cout);
    if (regime->parsed()) return cli::run_regime(cfg, std::cout);
    if (paths->parsed()) return cli::run_paths(cfg, std::cout);
    if (fpt->parsed()) return cli::run_fpt(cfg, std::cout);
    if (fet->parsed()) return cli::run_fet(cfg, std::cout);
  } catch (const Error& e) {
    std::cerr << "growthfpt: " << e.what() << "\n";
    return is_config_error(e.code()) ? cli::kExitConfig : cli::kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "growthfpt: " << e.what() << "\n";
    return cli::kExitFailure;
  }
  return cli::kExitConfig;
}
