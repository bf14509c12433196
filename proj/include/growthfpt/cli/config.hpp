#pragma once

// Run configuration for the command-line tool: a JSON document with
// command-line flags layered on top.

#include <cstdint>
#include <optional>
#include <string>

#include "growthfpt/errors.hpp"
#include "growthfpt/fet.hpp"
#include "growthfpt/growth_curve.hpp"
#include "growthfpt/montecarlo.hpp"
#include "growthfpt/quadrature.hpp"

namespace growthfpt::cli {

enum class NoiseKind { Multiplicative, Additive };
enum class Method { Closed, Volterra, MonteCarlo };

struct NoiseConfig {
  NoiseKind kind = NoiseKind::Multiplicative;
  double sigma = 0.0;
};

/// Evaluation grid for curves and densities, measured from t0.
struct GridConfig {
  double horizon = 50.0;
  std::size_t steps = 2000;
};

struct RunConfig {
  GrowthParams model;
  NoiseConfig noise;
  GridConfig grid;
  double nu = 0.8;
  ProportionalBand band{0.8, 1.0, 1.2};
  Method method = Method::Closed;
  SimConfig sim;
  std::size_t bins = 100;
  std::size_t plot_paths = 10;
  SeriesControl series;
  QuadratureSpec quadrature;
  std::string output = "out";
};

/// Command-line values; each one set replaces the document value.
struct Overrides {
  std::optional<std::string> method;
  std::optional<double> nu, nu1, nu2, sigma, dt, horizon;
  std::optional<std::size_t> paths, steps;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> output;
};

/// Parse and validate a configuration document. Throws Error with code
/// ParseError for malformed JSON and ValidationError, with the field path,
/// otherwise.
RunConfig parse_config(const std::string& text);

/// Layer command-line values over a parsed document and re-validate.
void apply(RunConfig& c, const Overrides& o);

}  // namespace growthfpt::cli
