#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace wavebreak::cli {

// Flat-section key/value files:
//
//   # comment
//   [model]
//   family = "whitham_rescaled"
//   epsilon = 0.1
//   [grid]
//   n = 2048
//   L = 8*pi            # bare pi, k*pi, pi/k accepted for lengths
//   [sweep]
//   values = [0.2, 0.1, 0.05]
//
// Values are strings, booleans, integers, floats or single-line arrays of
// those.

struct Value;
using Array = std::vector<Value>;

struct Value {
  std::variant<bool, std::int64_t, double, std::string, Array> data;

  bool operator==(const Value&) const = default;
};

using Section = std::map<std::string, Value>;
using Document = std::map<std::string, Section>;

/// Syntax error; line is 1-based (0 for override strings).
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Unknown keys, wrong types or out-of-range values, all of them at once.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

Document parse_document(std::string_view text);
Value parse_value(std::string_view text, std::size_t line = 0);
std::string format_value(const Value& v);

struct ModelConfig {
  std::string family = "burgers";
  double alpha = -0.5;
  double epsilon = 1.0;
  bool operator==(const ModelConfig&) const = default;
};

struct GridConfig {
  std::int64_t n = 1024;
  double half_length = 3.141592653589793;
  bool operator==(const GridConfig&) const = default;
};

struct InitialConfig {
  std::string profile = "neg_sine";
  double amplitude = 1.0;
  double wavenumber = 1.0;
  double width = 1.0;
  double lambda = 1.0;
  std::optional<std::string> file;  // CSV of n samples (one column, or x,u)
  bool operator==(const InitialConfig&) const = default;
};

struct TimeConfig {
  double final_time = 1.0;
  double cfl = 0.4;
  double m_stop = 200.0;
  double sup_factor = 10.0;
  double dt_min = 1e-12;
  double snapshot_interval = 0.0;
  double snapshot_tightening = 0.005;
  double tail_threshold = 1e-6;
  double window_fraction = 0.3;
  bool operator==(const TimeConfig&) const = default;
};

struct SeedsConfig {
  std::int64_t uniform = 32;
  std::int64_t cluster = 4;
  std::vector<double> extra;
  double delta = 0.1;
  double cutoff = 0.5;
  double resolution_tail = 1e-12;
  bool operator==(const SeedsConfig&) const = default;
};

struct CheckConfig {
  std::string theorem = "burgers_hilbert";
  double delta = 0.1;
  double alpha = -0.5;
  double epsilon = 1.0;
  std::string constants = "analytic_admissible";
  std::optional<double> c0;
  std::optional<double> c1;
  bool operator==(const CheckConfig&) const = default;
};

struct KernelConfig {
  double epsilon = 1.0;
  double eta0 = 1.0;
  std::int64_t log_points = 96;
  std::int64_t linear_points = 600;
  bool operator==(const KernelConfig&) const = default;
};

struct CompareConfig {
  double epsilon = 0.1;
  std::optional<double> horizon;
  double horizon_coefficient = 0.5;
  std::int64_t samples = 64;
  bool operator==(const CompareConfig&) const = default;
};

struct SweepConfig {
  std::string axis = "epsilon";
  std::vector<double> values;
  std::string command = "breaking-time";
  bool operator==(const SweepConfig&) const = default;
};

struct OutputConfig {
  std::string directory = "out";
  bool snapshots = false;
  bool operator==(const OutputConfig&) const = default;
};

struct RunConfig {
  ModelConfig model;
  GridConfig grid;
  InitialConfig initial;
  TimeConfig time;
  SeedsConfig seeds;
  CheckConfig check;
  KernelConfig kernel;
  CompareConfig compare;
  SweepConfig sweep;
  OutputConfig output;
  bool operator==(const RunConfig&) const = default;
};

/// Parses, applies "section.key=value" overrides and validates. `base_dir`
/// resolves a relative initial.file.
RunConfig parse_config(std::string_view text, const std::vector<std::string>& overrides = {},
                       const std::string& base_dir = "");
RunConfig load_config(const std::string& path, const std::vector<std::string>& overrides = {});

/// Canonical text form; parse_config(serialize(c)) == c.
std::string serialize(const RunConfig& config);

/// Semantic problems (parameter ranges, missing files); empty when valid.
std::vector<std::string> validate(const RunConfig& config);

/// Sets one scalar by its dotted name ("model.epsilon"), as a sweep does.
void set_scalar(RunConfig& config, const std::string& dotted, double value);

}  // namespace wavebreak::cli
