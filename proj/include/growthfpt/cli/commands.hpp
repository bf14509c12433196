#pragma once

// Command implementations for the growthfpt tool. Each writes its artifacts
// into cfg.output and returns a process exit status.

#include <ostream>
#include <string>

#include "growthfpt/cli/config.hpp"
#include "growthfpt/validation.hpp"

namespace growthfpt::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;

int run_curve(const RunConfig& c, std::ostream& log);
int run_regime(const RunConfig& c, std::ostream& log);
int run_paths(const RunConfig& c, std::ostream& log);
int run_fpt(const RunConfig& c, std::ostream& log);
int run_fet(const RunConfig& c, std::ostream& log);

/// Run the acceptance suite; `out` may be empty to skip the report file.
int run_validate(const validation::Options& opt, const std::string& out, std::ostream& log);

}  // namespace growthfpt::cli
