#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "wavebreak/field.hpp"
#include "wavebreak_cli/config.hpp"

namespace wavebreak::cli {

enum ExitCode : int { exit_ok = 0, exit_usage = 2, exit_check_failed = 3, exit_numerical = 4 };

/// Command precondition not met by the config (wrong model family, domain
/// too short); maps to exit_usage.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// What a command reports back, besides its files.
struct CommandOutcome {
  int exit_code = exit_ok;
  std::string message;
  nlohmann::json summary = nlohmann::json::object();
  std::optional<double> t_est;
  std::optional<double> ci_halfwidth;
  std::optional<std::pair<double, double>> bracket;
  std::optional<bool> pass;
};

const std::vector<std::string>& command_names();
bool is_command(const std::string& name);

/// Runs one command into `out` and writes its manifest.json. Never throws
/// for numerical or precondition failures; those become exit codes.
CommandOutcome dispatch(const std::string& command, const RunConfig& config,
                        const std::filesystem::path& out, int workers, std::ostream& log);

/// Initial datum from the [initial] section (profile family or sample file).
Field initial_datum(const RunConfig& config);

}  // namespace wavebreak::cli
