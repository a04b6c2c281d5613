#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "wavebreak_cli/commands.hpp"
#include "wavebreak_cli/output.hpp"

namespace wavebreak::cli {

/// Config keys an axis value is written to.
std::vector<std::string> axis_keys(const std::string& axis);

struct SweepRow {
  double value = 0.0;
  std::string directory;
  CommandOutcome outcome;
};

struct SlopeFit {
  double slope = 0.0;
  double slope_se = 0.0;
  std::size_t points = 0;
};

/// Least-squares slope of log T_est against log value over rows that have
/// a positive estimate; nullopt with fewer than two such rows.
std::optional<SlopeFit> log_log_slope(const std::vector<SweepRow>& rows);

/// Runs sweep.command once per sweep.values entry on `workers` threads.
/// Each run writes into its own subdirectory with its own manifest; a
/// failing run is recorded and the others continue.
CommandOutcome run_sweep(const RunConfig& config, OutputDir& out, int workers, std::ostream& log);

}  // namespace wavebreak::cli
