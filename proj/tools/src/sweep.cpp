#include "wavebreak_cli/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "wavebreak/numerics.hpp"

namespace wavebreak::cli {

using nlohmann::json;

std::vector<std::string> axis_keys(const std::string& axis) {
  if (axis == "epsilon") return {"model.epsilon", "check.epsilon", "compare.epsilon", "kernel.epsilon"};
  if (axis == "alpha") return {"model.alpha", "check.alpha"};
  if (axis == "delta") return {"check.delta", "seeds.delta"};
  if (axis == "lambda") return {"initial.lambda"};
  if (axis == "n") return {"grid.n"};
  throw std::invalid_argument("unknown sweep axis '" + axis + "'");
}

std::optional<SlopeFit> log_log_slope(const std::vector<SweepRow>& rows) {
  std::vector<double> x, y;
  for (const auto& r : rows) {
    if (r.outcome.t_est && *r.outcome.t_est > 0.0 && r.value > 0.0) {
      x.push_back(std::log(r.value));
      y.push_back(std::log(*r.outcome.t_est));
    }
  }
  if (x.size() < 2) return std::nullopt;
  const LineFit f = fit_line(x, y);
  return SlopeFit{f.slope, f.slope_se, f.count};
}

CommandOutcome run_sweep(const RunConfig& config, OutputDir& out, int workers, std::ostream& log) {
  const auto& sw = config.sweep;
  if (sw.values.empty()) throw UsageError("sweep.values is empty");
  const auto keys = axis_keys(sw.axis);
  std::vector<SweepRow> rows(sw.values.size());
  std::vector<RunConfig> configs(sw.values.size(), config);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    rows[i].value = sw.values[i];
    char dir[64];
    std::snprintf(dir, sizeof dir, "%s_%02zu", sw.axis.c_str(), i);
    rows[i].directory = dir;
    for (const auto& k : keys) set_scalar(configs[i], k, sw.values[i]);
  }

  std::mutex log_mutex;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < rows.size(); i = next++) {
      std::ostringstream job_log;
      // An out-of-range axis value fails that run only.
      const auto problems = validate(configs[i]);
      if (!problems.empty()) {
        rows[i].outcome.exit_code = exit_usage;
        rows[i].outcome.message = problems.front();
      } else {
        rows[i].outcome = dispatch(sw.command, configs[i], out.root() / rows[i].directory, 1, job_log);
      }
      std::lock_guard lock(log_mutex);
      log << job_log.str() << sw.axis << " = " << rows[i].value << ": exit " << rows[i].outcome.exit_code
          << (rows[i].outcome.message.empty() ? "" : " (" + rows[i].outcome.message + ")") << "\n";
    }
  };
  const std::size_t threads = std::clamp<std::size_t>(static_cast<std::size_t>(std::max(workers, 1)), 1, rows.size());
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<std::vector<double>> table;
  json runs = json::array();
  std::size_t succeeded = 0;
  int worst = exit_ok;
  for (const auto& r : rows) {
    const auto& o = r.outcome;
    table.push_back({r.value, static_cast<double>(o.exit_code), o.t_est.value_or(nan), o.ci_halfwidth.value_or(nan),
                     o.bracket ? o.bracket->first : nan, o.bracket ? o.bracket->second : nan,
                     o.pass ? static_cast<double>(*o.pass) : nan});
    json run = {{"value", r.value}, {"directory", r.directory}, {"exit_code", o.exit_code}, {"message", o.message}};
    run["t_est"] = o.t_est ? json(*o.t_est) : json(nullptr);
    if (o.bracket) run["bracket"] = {o.bracket->first, o.bracket->second};
    runs.push_back(std::move(run));
    if (o.exit_code == exit_ok) ++succeeded;
    worst = std::max(worst, o.exit_code);
    const auto manifest = out.root() / r.directory / "manifest.json";
    if (std::filesystem::exists(manifest)) out.record(r.directory + "/manifest.json");
  }
  out.write_csv("sweep.csv", {sw.axis, "exit_code", "t_est", "ci_halfwidth", "bracket_lo", "bracket_hi", "pass"},
                table);

  json j;
  j["axis"] = sw.axis;
  j["command"] = sw.command;
  j["keys"] = keys;
  j["runs"] = runs;
  j["succeeded"] = succeeded;
  if (sw.axis == "epsilon" || sw.axis == "lambda") {
    if (const auto fit = log_log_slope(rows)) {
      j["log_log_slope"] = {{"slope", fit->slope}, {"slope_se", fit->slope_se}, {"points", fit->points}};
    } else {
      j["log_log_slope"] = nullptr;
    }
  }
  out.write_json("sweep.json", j);

  CommandOutcome o;
  o.summary = j;
  o.message = std::to_string(succeeded) + " of " + std::to_string(rows.size()) + " runs succeeded";
  // Recorded failures do not fail the sweep unless nothing succeeded.
  o.exit_code = succeeded > 0 ? exit_ok : worst;
  return o;
}

}  // namespace wavebreak::cli
