#include "wavebreak_cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <tuple>

#include "wavebreak/characteristics.hpp"
#include "wavebreak/diagnostics.hpp"
#include "wavebreak/evolve.hpp"
#include "wavebreak/hypotheses.hpp"
#include "wavebreak/kernel.hpp"
#include "wavebreak/numerics.hpp"
#include "wavebreak/profiles.hpp"
#include "wavebreak_cli/output.hpp"
#include "wavebreak_cli/sweep.hpp"

namespace wavebreak::cli {

using nlohmann::json;

namespace {

// ---- config -> library objects ---------------------------------------------

Grid make_grid(const RunConfig& c) { return Grid::make(static_cast<std::size_t>(c.grid.n), c.grid.half_length); }

ModelSpec make_model(const RunConfig& c) {
  return ModelSpec::make(*parse_family(c.model.family), c.model.alpha, c.model.epsilon);
}

RunParams make_params(const RunConfig& c) {
  RunParams p;
  p.final_time = c.time.final_time;
  p.cfl = c.time.cfl;
  p.m_stop = c.time.m_stop;
  p.sup_factor = c.time.sup_factor;
  p.dt_min = c.time.dt_min;
  p.snapshot_interval = c.time.snapshot_interval;
  p.snapshot_tightening = c.time.snapshot_tightening;
  p.tail_threshold = c.time.tail_threshold;
  p.window_fraction = c.time.window_fraction;
  return p;
}

ConstantMode constant_mode(const RunConfig& c) {
  return c.check.constants == "numeric_refine" ? ConstantMode::numeric_refine : ConstantMode::analytic_admissible;
}

std::optional<Theorem> theorem_for(Family f) {
  switch (f) {
    case Family::burgers_hilbert: return Theorem::burgers_hilbert;
    case Family::whitham: return Theorem::whitham;
    case Family::fkdv: return Theorem::fkdv;
    case Family::whitham_rescaled: return Theorem::whitham_rescaled;
    default: return std::nullopt;
  }
}

TheoremInputs theorem_inputs(const RunConfig& c) {
  TheoremInputs in;
  in.theorem = *parse_theorem(c.check.theorem);
  in.delta = c.check.delta;
  in.alpha = c.check.alpha;
  in.epsilon = c.check.epsilon;
  in.c0 = c.check.c0;
  in.c1 = c.check.c1;
  return in;
}

// Hur constants take seconds to tabulate; sweeps reuse them.
HurConstants hur_constants(double eps, const KernelConfig& k) {
  static std::mutex mutex;
  static std::map<std::tuple<double, double, std::int64_t, std::int64_t>, HurConstants> cache;
  const auto key = std::make_tuple(eps, k.eta0, k.log_points, k.linear_points);
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  const ModelSpec m = eps == 1.0 ? ModelSpec::make(Family::whitham) : ModelSpec::make(Family::whitham_rescaled, 0.0, eps);
  const auto xs = hur_abscissae(eps, k.eta0, static_cast<std::size_t>(k.log_points),
                                static_cast<std::size_t>(k.linear_points));
  const HurConstants h = estimate_hur_constants(kernel_table(m, xs), k.eta0);
  std::lock_guard lock(mutex);
  cache.emplace(key, h);
  return h;
}

std::optional<HurConstants> hur_for(const TheoremInputs& in, const KernelConfig& k) {
  if (in.theorem == Theorem::whitham) return hur_constants(1.0, k);
  if (in.theorem == Theorem::whitham_rescaled) return hur_constants(in.epsilon, k);
  return std::nullopt;
}

// Inputs of the theorem that covers the configured model, with alpha and eps
// taken from the model; nullopt for burgers and kdv.
std::optional<TheoremInputs> matched_inputs(const RunConfig& c, const ModelSpec& model) {
  const auto th = theorem_for(model.family());
  if (!th) return std::nullopt;
  TheoremInputs in = theorem_inputs(c);
  in.theorem = *th;
  in.alpha = model.alpha();
  in.epsilon = model.epsilon();
  return in;
}

std::optional<HypothesisReport> try_check(const RunConfig& c, const ModelSpec& model, const Field& phi,
                                          std::ostream& log) {
  const auto in = matched_inputs(c, model);
  if (!in) return std::nullopt;
  // Range problems are reported before the kernel constants are tabulated.
  const auto [lo, hi] = delta_range(in->theorem, in->epsilon);
  const bool rescaled_ok = in->theorem != Theorem::whitham_rescaled || in->delta / in->epsilon < 0.5;
  if (!(in->delta > lo && in->delta <= hi) || !rescaled_ok) {
    log << "hypothesis check skipped: delta = " << in->delta << " outside the admissible range for "
        << to_string(in->theorem) << "\n";
    return std::nullopt;
  }
  try {
    return check_theorem(*in, phi, estimate_constants(constant_mode(c)), hur_for(*in, c.kernel));
  } catch (const std::exception& e) {
    log << "hypothesis check skipped: " << e.what() << "\n";
    return std::nullopt;
  }
}

// ---- JSON ------------------------------------------------------------------

json to_json(const BreakingEstimate& e) {
  return {{"t_est", e.t_est},
          {"ci_halfwidth", e.ci_halfwidth},
          {"window_start", e.window_start},
          {"window_end", e.window_end},
          {"sup_u_at_detection", e.sup_u_at_detection},
          {"samples", e.samples},
          {"resolved_window", e.resolved_window}};
}

json to_json(const ModelSpec& m) {
  return {{"family", std::string(to_string(m.family()))},
          {"alpha", m.alpha()},
          {"epsilon", m.epsilon()},
          {"transport", m.transport()},
          {"description", m.describe()}};
}

json to_json(const Grid& g) {
  return {{"n", g.size()}, {"L", g.half_length()}, {"dx", g.spacing()}};
}

json to_json(const RunParams& p) {
  return {{"final_time", p.final_time},   {"cfl", p.cfl},
          {"m_stop", p.m_stop},           {"sup_factor", p.sup_factor},
          {"dt_min", p.dt_min},           {"snapshot_interval", p.snapshot_interval},
          {"snapshot_tightening", p.snapshot_tightening},
          {"tail_threshold", p.tail_threshold},
          {"window_fraction", p.window_fraction},
          {"max_snapshots", p.max_snapshots}};
}

json to_json(const NormBundle& n) {
  return {{"l2", n.l2},           {"linf", n.linf},         {"h1", n.h1},           {"h2", n.h2},
          {"h3", n.h3},           {"l2_d1", n.l2_d1},       {"l2_d2", n.l2_d2},     {"l2_d3", n.l2_d3},
          {"linf_d1", n.linf_d1}, {"linf_d2", n.linf_d2},   {"linf_d3", n.linf_d3}, {"inf_d1", n.inf_d1},
          {"argmin_d1", n.argmin_d1}, {"boundary_decay", n.boundary_decay}};
}

json to_json(const HurConstants& h) {
  return {{"l0", h.l0},
          {"l_inf", h.l_inf},
          {"l0_effective", h.l0_effective()},
          {"l_inf_effective", h.l_inf_effective()},
          {"eta0", h.eta0},
          {"epsilon", h.epsilon},
          {"l_inf_partial", h.l_inf_partial},
          {"l_inf_tail", h.l_inf_tail},
          {"near_samples", h.near_samples},
          {"far_samples", h.far_samples}};
}

json to_json(const ConditionResult& r) {
  return {{"name", r.name}, {"lhs", r.lhs}, {"rhs", r.rhs}, {"margin", r.margin()},
          {"strict", r.strict}, {"pass", r.pass()}};
}

json to_json(const HypothesisReport& r) {
  json j;
  j["theorem"] = std::string(to_string(r.inputs.theorem));
  j["inputs"] = {{"delta", r.inputs.delta}, {"alpha", r.inputs.alpha}, {"epsilon", r.inputs.epsilon},
                 {"c0", r.c0},              {"c1", r.c1}};
  j["norms"] = to_json(r.norms);
  j["constants"] = {{"c_sob", r.constants.c_sob},
                    {"c_mor", r.constants.c_mor},
                    {"c_gn", r.constants.c_gn},
                    {"provenance_sob", r.constants.provenance_sob},
                    {"provenance_mor", r.constants.provenance_mor},
                    {"provenance_gn", r.constants.provenance_gn}};
  if (r.constants.family) {
    const auto& f = *r.constants.family;
    j["constants"]["family_maxima"] = {{"c_sob", f.c_sob}, {"c_mor", f.c_mor}, {"c_gn", f.c_gn}};
  }
  if (r.hur) j["hur"] = to_json(*r.hur);
  j["conditions"] = json::array();
  for (const auto& c : r.conditions) j["conditions"].push_back(to_json(c));
  j["guards"] = json::array();
  for (const auto& c : r.guards) j["guards"].push_back(to_json(c));
  j["pass"] = r.pass;
  j["bracket"] = r.bracket ? json{r.bracket->first, r.bracket->second} : json(nullptr);
  return j;
}

json run_json(const RunResult& r) {
  json j;
  j["model"] = to_json(r.model);
  j["grid"] = to_json(r.grid);
  j["parameters"] = to_json(r.params);
  j["termination"] = std::string(to_string(r.termination));
  j["message"] = r.message;
  j["warnings"] = r.warnings;
  j["m0"] = r.m0;
  j["phi_sup"] = r.phi_sup;
  j["steps"] = r.series.empty() ? 0 : r.series.size() - 1;
  j["final_t"] = r.series.empty() ? 0.0 : r.series.back().t;
  j["stop_rule"] = "|m| >= m_stop*|m(0)| with ||u||_inf <= sup_factor*||phi||_inf";
  j["under_resolved_since"] = r.under_resolved_since ? json(*r.under_resolved_since) : json(nullptr);
  j["estimate"] = r.estimate ? to_json(*r.estimate) : json(nullptr);
  return j;
}

// ---- CSV -------------------------------------------------------------------

void write_scalars(OutputDir& out, const RunResult& r) {
  std::vector<std::vector<double>> rows;
  rows.reserve(r.series.size());
  for (const auto& s : r.series) {
    rows.push_back({s.t, s.m, s.argmin_x, s.l2, s.linf_u, s.linf_ux, s.l2_uxx, s.l2_uxxx, s.dt, s.tail});
  }
  out.write_csv("scalars.csv",
                {"t", "m", "argmin_x", "l2", "linf_u", "linf_ux", "l2_uxx", "l2_uxxx", "dt", "tail_indicator"},
                rows);
}

void write_series(OutputDir& out, const std::string& name, const DiagnosticSeries& s) {
  out.write_columns(name, {"t", "value", "reference", "residual"}, {&s.t, &s.value, &s.reference, &s.residual});
}

std::string numbered(const char* pattern, std::size_t i) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, i);
  return buf;
}

int run_exit(const RunResult& r) { return r.termination == Termination::aborted ? exit_numerical : exit_ok; }

void attach_estimate(CommandOutcome& o, const std::optional<BreakingEstimate>& e) {
  if (!e) return;
  o.t_est = e->t_est;
  o.ci_halfwidth = e->ci_halfwidth;
}

// ---- commands --------------------------------------------------------------

CommandOutcome cmd_simulate(const RunConfig& c, OutputDir& out, std::ostream& log) {
  const ModelSpec model = make_model(c);
  const Field phi = initial_datum(c);
  const RunResult r = run(model, phi, make_params(c));
  write_scalars(out, r);
  if (c.output.snapshots) {
    std::vector<std::vector<double>> index;
    for (std::size_t i = 0; i < r.snapshots.size(); ++i) {
      const auto& s = r.snapshots[i];
      std::vector<std::vector<double>> rows;
      for (std::size_t j = 0; j < r.grid.size(); ++j) rows.push_back({r.grid.x(j), s.u.values()[j]});
      out.write_csv(numbered("snapshots/snapshot_%05zu.csv", i), {"x", "u"}, rows);
      index.push_back({static_cast<double>(i), s.t});
    }
    out.write_csv("snapshots/index.csv", {"index", "t"}, index);
  }
  json j = run_json(r);
  // Energy laws and the Gagliardo-Nirenberg chain on the resolved part of the run.
  json diag = json::object();
  const double t_max = r.under_resolved_since.value_or(-1.0);
  for (int order = 1; order <= 3; ++order) {
    try {
      const DiagnosticSeries s = energy_law_residual(r, order, t_max);
      write_series(out, "energy_law_" + std::to_string(order) + ".csv", s);
      diag["energy_law_" + std::to_string(order) + "_max_relative"] = s.max_relative();
    } catch (const std::invalid_argument& e) {
      if (order < 3) log << "energy law " << order << " skipped: " << e.what() << "\n";
    }
  }
  if (r.snapshots.size() >= 2) {
    const DiagnosticSeries gn = gn_chain_check(r, estimate_constants());
    write_series(out, "gn_chain.csv", gn);
    const double worst = gn.residual.empty() ? 0.0 : *std::min_element(gn.residual.begin(), gn.residual.end());
    diag["gn_chain_min_slack"] = worst;
    diag["gn_chain_pass"] = worst >= 0.0;
  }
  j["diagnostics"] = diag;
  out.write_json("run.json", j);

  CommandOutcome o;
  o.exit_code = run_exit(r);
  o.message = std::string(to_string(r.termination)) + (r.message.empty() ? "" : ": " + r.message);
  attach_estimate(o, r.estimate);
  o.summary = {{"termination", std::string(to_string(r.termination))},
               {"estimate", j["estimate"]}};
  return o;
}

CommandOutcome cmd_breaking_time(const RunConfig& c, OutputDir& out, std::ostream& log) {
  const ModelSpec model = make_model(c);
  const Field phi = initial_datum(c);
  RunParams p = make_params(c);
  p.store_snapshots = false;
  const RunResult r = run(model, phi, p);
  write_scalars(out, r);
  std::optional<BreakingEstimate> e = r.estimate;
  std::string note;
  if (!e && r.termination != Termination::aborted) e = estimate_breaking(r, &note);
  const NormBundle norms = compute_norms(phi);
  json j = run_json(r);
  j["estimate"] = e ? to_json(*e) : json(nullptr);
  j["estimate_note"] = note;
  j["inf_phi_prime"] = norms.inf_d1;
  // Scale of the breaking time, eps^{-1} |inf phi'|^{-1}.
  j["reference_time"] = norms.inf_d1 < 0.0 ? json(1.0 / (model.transport() * -norms.inf_d1)) : json(nullptr);

  CommandOutcome o;
  attach_estimate(o, e);
  if (const auto rep = try_check(c, model, phi, log)) {
    j["hypotheses"] = to_json(*rep);
    o.pass = rep->pass;
    if (rep->bracket) o.bracket = rep->bracket;
  }
  out.write_json("breaking.json", j);
  if (e) {
    o.exit_code = exit_ok;
    o.message = "T_est = " + csv_number(e->t_est);
  } else if (r.termination == Termination::aborted) {
    o.exit_code = exit_numerical;
    o.message = "run aborted: " + r.message;
  } else {
    o.exit_code = exit_check_failed;
    o.message = "no breaking detected up to t = " + csv_number(r.series.back().t);
  }
  o.summary = {{"termination", j["termination"]}, {"estimate", j["estimate"]}};
  return o;
}

CommandOutcome cmd_check(const RunConfig& c, OutputDir& out, std::ostream&) {
  const Field phi = initial_datum(c);
  const TheoremInputs in = theorem_inputs(c);
  CommandOutcome o;
  json j;
  try {
    const HypothesisReport rep = check_theorem(in, phi, estimate_constants(constant_mode(c)), hur_for(in, c.kernel));
    j = to_json(rep);
    o.pass = rep.pass;
    o.bracket = rep.bracket;
    o.exit_code = rep.pass ? exit_ok : exit_check_failed;
    o.message = rep.pass ? "all conditions hold" : "conditions fail";
  } catch (const std::invalid_argument& e) {
    // Data the theorem cannot apply to (e.g. phi' >= 0 everywhere).
    j = {{"theorem", c.check.theorem}, {"pass", false}, {"error", e.what()}, {"bracket", nullptr}};
    o.pass = false;
    o.exit_code = exit_check_failed;
    o.message = e.what();
  }
  out.write_json("report.json", j);
  o.summary = {{"pass", j["pass"]}, {"bracket", j["bracket"]}};
  return o;
}

CommandOutcome cmd_certify(const RunConfig& c, OutputDir& out, std::ostream&) {
  RunConfig base = c;
  base.initial.lambda = 1.0;
  const Field phi0 = initial_datum(base);
  const TheoremInputs in = theorem_inputs(c);
  CommandOutcome o;
  json j;
  try {
    const LambdaSearch ls = find_lambda(phi0, in, estimate_constants(constant_mode(c)), hur_for(in, c.kernel));
    j = to_json(ls.report);
    j["lambda"] = ls.lambda;
    j["monotone"] = ls.monotone;
    j["scan"] = json::array();
    for (const auto& [lambda, pass] : ls.scan) j["scan"].push_back({{"lambda", lambda}, {"pass", pass}});
    o.pass = ls.report.pass;
    o.bracket = ls.report.bracket;
    o.exit_code = ls.report.pass ? exit_ok : exit_check_failed;
    o.message = "lambda = " + csv_number(ls.lambda);
  } catch (const std::exception& e) {
    j = {{"theorem", c.check.theorem}, {"pass", false}, {"error", e.what()}, {"bracket", nullptr}};
    o.pass = false;
    o.exit_code = exit_check_failed;
    o.message = e.what();
  }
  out.write_json("report.json", j);
  o.summary = {{"pass", j["pass"]}, {"lambda", j.value("lambda", json(nullptr))}, {"bracket", j["bracket"]}};
  return o;
}

CommandOutcome cmd_kernel(const RunConfig& c, OutputDir& out, std::ostream&) {
  const double eps = c.kernel.epsilon;
  const ModelSpec m = eps == 1.0 ? ModelSpec::make(Family::whitham) : ModelSpec::make(Family::whitham_rescaled, 0.0, eps);
  const auto xs = hur_abscissae(eps, c.kernel.eta0, static_cast<std::size_t>(c.kernel.log_points),
                                static_cast<std::size_t>(c.kernel.linear_points));
  const KernelTable t = kernel_table(m, xs);
  out.write_columns("kernel.csv", {"x", "K", "Kprime", "quad_error"}, {&t.x, &t.k, &t.k_prime, &t.quad_error});
  const HurConstants h = estimate_hur_constants(t, c.kernel.eta0);
  const bool holds = hur_bounds_hold(t, h);
  const auto unconverged = static_cast<std::size_t>(std::count(t.converged.begin(), t.converged.end(), false));
  json j = to_json(h);
  j["bounds_hold"] = holds;
  j["abscissae"] = t.x.size();
  j["unconverged"] = unconverged;
  j["max_quad_error"] = *std::max_element(t.quad_error.begin(), t.quad_error.end());
  out.write_json("kernel.json", j);
  CommandOutcome o;
  o.pass = holds;
  o.exit_code = unconverged ? exit_numerical : (holds ? exit_ok : exit_check_failed);
  o.message = "L0 = " + csv_number(h.l0) + ", Linf = " + csv_number(h.l_inf);
  o.summary = j;
  return o;
}

json check_json(const CheckOutcome& c) {
  return {{"name", c.name},        {"pass", c.pass},           {"worst_margin", c.worst_margin},
          {"at_time", c.at_time},  {"at_seed", c.at_seed},     {"evaluated", c.evaluated},
          {"note", c.note}};
}

CommandOutcome cmd_characteristics(const RunConfig& c, OutputDir& out, std::ostream& log) {
  const ModelSpec model = make_model(c);
  const Field phi = initial_datum(c);
  const RunResult r = run(model, phi, make_params(c));
  write_scalars(out, r);
  CommandOutcome o;
  attach_estimate(o, r.estimate);
  if (r.termination == Termination::aborted) {
    out.write_json("run.json", run_json(r));
    o.exit_code = exit_numerical;
    o.message = "run aborted: " + r.message;
    return o;
  }
  const double eps = model.family() == Family::whitham_rescaled ? model.epsilon() : 1.0;
  std::vector<double> seeds = default_seeds(phi, c.seeds.delta, eps, static_cast<std::size_t>(c.seeds.uniform),
                                            static_cast<std::size_t>(c.seeds.cluster));
  seeds.insert(seeds.end(), c.seeds.extra.begin(), c.seeds.extra.end());
  const Advection adv = advect(r, seeds);

  std::optional<BracketSpec> bracket;
  json hyp = nullptr;
  if (const auto rep = try_check(c, model, phi, log)) {
    hyp = to_json(*rep);
    if (rep->pass && rep->bracket) bracket = BracketSpec{rep->bracket->first, rep->bracket->second};
    o.bracket = rep->bracket;
  }
  const CharacteristicReport rep =
      verify_smallness_and_brackets(r, adv, c.seeds.delta, eps, bracket, c.seeds.cutoff, c.seeds.resolution_tail);

  // Residuals are measured against the largest Riccati scale over all seeds.
  double global_scale = 0.0;
  for (const auto& tr : adv.trajectories) {
    for (std::size_t k = 0; k < tr.t.size() && tr.t[k] <= rep.checked_until; ++k) {
      global_scale = std::max({global_scale, model.transport() * tr.v1[k] * tr.v1[k], std::abs(tr.k1[k])});
    }
  }
  json seeds_json = json::array();
  double worst_riccati = 0.0;
  for (std::size_t i = 0; i < adv.trajectories.size(); ++i) {
    const Trajectory& tr = adv.trajectories[i];
    const std::string name = numbered("trajectories/seed_%03zu.csv", i);
    out.write_columns(name, {"t", "X", "v0", "v1", "K0", "K1", "r"}, {&tr.t, &tr.x, &tr.v0, &tr.v1, &tr.k0, &tr.k1, &tr.r});
    json s = {{"index", i}, {"seed", tr.seed}, {"file", name}};
    if (tr.t.size() >= 5) {
      const RiccatiResidual res = verify_riccati(tr, model, rep.checked_until, 1e-3, 1e-3 * global_scale);
      s["riccati_max_rel1"] = res.max_rel1;
      s["riccati_rms_rel1"] = res.rms_rel1;
      s["riccati_max_rel0"] = res.max_rel0;
      worst_riccati = std::max(worst_riccati, res.max_rel1);
    }
    seeds_json.push_back(s);
  }
  out.write_columns("m.csv", {"t", "m"}, {&adv.t, &adv.m});

  json j;
  j["delta"] = rep.delta;
  j["epsilon"] = rep.epsilon;
  j["cutoff_factor"] = rep.cutoff_factor;
  j["m_stop"] = r.params.m_stop;
  j["resolution_tail"] = rep.resolution_tail;
  j["checked_until"] = rep.checked_until;
  j["checked_m"] = rep.checked_m;
  j["window_end"] = rep.window_end;
  j["sigma_seeds"] = rep.sigma_seeds;
  j["cadence_ok"] = adv.cadence_ok;
  j["cadence_violation"] = adv.cadence_violation ? json(*adv.cadence_violation) : json(nullptr);
  j["termination"] = std::string(to_string(r.termination));
  j["estimate"] = r.estimate ? to_json(*r.estimate) : json(nullptr);
  j["bracket_checked"] = bracket.has_value();
  j["hypotheses"] = hyp;
  j["riccati_worst_max_rel1"] = worst_riccati;
  j["checks"] = json::array();
  for (const auto& chk : rep.checks) j["checks"].push_back(check_json(chk));
  j["seeds"] = seeds_json;
  j["pass"] = rep.all_pass();
  out.write_json("checks.json", j);

  o.pass = rep.all_pass();
  o.exit_code = rep.all_pass() ? exit_ok : exit_check_failed;
  o.message = rep.all_pass() ? "all characteristic checks pass" : "characteristic checks fail";
  for (const auto& chk : rep.checks) {
    if (!chk.pass) o.message += " [" + chk.name + "]";
  }
  o.summary = {{"pass", rep.all_pass()}, {"checked_until", rep.checked_until}, {"window_end", rep.window_end}};
  return o;
}

CommandOutcome cmd_blowup_functional(const RunConfig& c, OutputDir& out, std::ostream&) {
  const ModelSpec model = make_model(c);
  if (model.family() != Family::burgers_hilbert) {
    throw UsageError("blowup-functional needs model.family = \"burgers_hilbert\"");
  }
  if (c.grid.half_length < 48.0) throw UsageError("blowup-functional needs grid.L >= 48");
  const Field phi = initial_datum(c);
  const B1Result b1 = check_b1(phi);
  RunParams p = make_params(c);
  if (p.snapshot_interval == 0.0 && b1.pass) p.snapshot_interval = 0.01 * b1.t_upper;
  const RunResult r = run(model, phi, p);
  write_scalars(out, r);
  CommandOutcome o;
  attach_estimate(o, r.estimate);
  json j;
  j["b1"] = {{"f0", b1.f0}, {"rhs", b1.rhs}, {"pass", b1.pass}, {"t_upper", b1.pass ? json(b1.t_upper) : json(nullptr)}};
  j["termination"] = std::string(to_string(r.termination));
  j["estimate"] = r.estimate ? to_json(*r.estimate) : json(nullptr);
  if (r.termination == Termination::aborted) {
    out.write_json("functional.json", j);
    o.exit_code = exit_numerical;
    o.message = "run aborted: " + r.message;
    return o;
  }
  const BlowupFunctionalRecord rec = blowup_functional(r);
  std::vector<std::vector<double>> rows;
  std::size_t resolved = 0, bad_ineq = 0, bad_cs = 0, bad_h = 0;
  for (std::size_t i = 0; i < rec.t.size(); ++i) {
    rows.push_back({rec.t[i], rec.y[i], rec.f[i], rec.q[i], rec.dfdt[i], rec.rhs_bound[i], rec.hilbert_term[i],
                    static_cast<double>(rec.inequality_ok[i]), static_cast<double>(rec.cauchy_schwarz_ok[i]),
                    static_cast<double>(rec.hilbert_ok[i]), static_cast<double>(rec.resolved[i])});
    bad_cs += !rec.cauchy_schwarz_ok[i];
    if (!rec.resolved[i]) continue;
    ++resolved;
    bad_ineq += !rec.inequality_ok[i];
    bad_h += !rec.hilbert_ok[i];
  }
  out.write_csv("functional.csv",
                {"t", "Y", "F", "Q", "dFdt", "rhs_bound", "hilbert_term", "inequality_ok", "cauchy_schwarz_ok",
                 "hilbert_ok", "resolved"},
                rows);
  const bool in_time = b1.pass && r.estimate && r.estimate->t_est <= b1.t_upper;
  j["u0_l2"] = rec.u0_l2;
  j["samples"] = rec.t.size();
  j["resolved_samples"] = resolved;
  j["violations"] = {{"inequality", bad_ineq}, {"cauchy_schwarz", bad_cs}, {"hilbert", bad_h}};
  j["truncated"] = rec.truncated;
  j["all_ok"] = rec.all_ok();
  j["breaking_before_bound"] = in_time;
  const bool pass = b1.pass && rec.all_ok() && !rec.truncated && in_time;
  j["pass"] = pass;
  out.write_json("functional.json", j);
  o.pass = pass;
  if (b1.pass) o.bracket = std::make_pair(0.0, b1.t_upper);
  o.exit_code = pass ? exit_ok : exit_check_failed;
  o.message = pass ? "functional inequalities hold" : "functional checks fail";
  o.summary = {{"pass", pass}, {"b1", j["b1"]}};
  return o;
}

CommandOutcome cmd_compare_kdv(const RunConfig& c, OutputDir& out, std::ostream&) {
  const Field phi = initial_datum(c);
  CompareParams p;
  p.horizon = c.compare.horizon;
  p.horizon_coefficient = c.compare.horizon_coefficient;
  p.samples = static_cast<std::size_t>(c.compare.samples);
  p.cfl = c.time.cfl;
  const KdvComparison k = kdv_compare(c.compare.epsilon, phi, p);
  out.write_columns("compare.csv", {"t", "err_l2", "err_h1"}, {&k.t, &k.err_l2, &k.err_h1});
  json j = {{"epsilon", k.epsilon},   {"horizon", k.horizon},     {"M_l2", k.m_l2},
            {"M_h1", k.m_h1},         {"log_slope", k.log_slope}, {"truncated", k.truncated},
            {"note", k.note},         {"fit_window", {0.2 * k.horizon, k.horizon}}};
  out.write_json("compare.json", j);
  CommandOutcome o;
  o.exit_code = k.truncated ? exit_numerical : exit_ok;
  o.message = "M_l2 = " + csv_number(k.m_l2) + (k.truncated ? " (truncated: " + k.note + ")" : "");
  o.summary = j;
  return o;
}

}  // namespace

Field initial_datum(const RunConfig& c) {
  const Grid g = make_grid(c);
  if (!c.initial.file) {
    ProfileSpec spec;
    spec.family = c.initial.profile;
    spec.amplitude = c.initial.amplitude;
    spec.wavenumber = c.initial.wavenumber;
    spec.width = c.initial.width;
    spec.lambda = c.initial.lambda;
    return make_profile(g, spec);
  }
  std::ifstream in(*c.initial.file);
  if (!in) throw UsageError("cannot read initial.file '" + *c.initial.file + "'");
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const auto comma = line.find_last_of(',');
    const std::string field = comma == std::string::npos ? line : line.substr(comma + 1);
    try {
      std::size_t used = 0;
      const double v = std::stod(field, &used);
      values.push_back(v);
    } catch (const std::exception&) {
      if (values.empty()) continue;  // header row
      throw UsageError("initial.file line " + std::to_string(line_no) + ": not a number");
    }
  }
  if (values.size() != g.size()) {
    throw UsageError("initial.file has " + std::to_string(values.size()) + " samples, grid.n is " +
                     std::to_string(g.size()));
  }
  for (double& v : values) v *= c.initial.lambda;
  return Field::from_values(g, std::move(values));
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"simulate",        "check",           "certify",
                                                 "kernel",          "breaking-time",   "characteristics",
                                                 "blowup-functional", "compare-kdv",   "sweep"};
  return names;
}

bool is_command(const std::string& name) {
  const auto& n = command_names();
  return std::find(n.begin(), n.end(), name) != n.end();
}

CommandOutcome dispatch(const std::string& command, const RunConfig& config, const std::filesystem::path& out_dir,
                        int workers, std::ostream& log) {
  const auto start = std::chrono::steady_clock::now();
  CommandOutcome o;
  OutputDir out(out_dir);
  try {
    if (command == "simulate") o = cmd_simulate(config, out, log);
    else if (command == "check") o = cmd_check(config, out, log);
    else if (command == "certify") o = cmd_certify(config, out, log);
    else if (command == "kernel") o = cmd_kernel(config, out, log);
    else if (command == "breaking-time") o = cmd_breaking_time(config, out, log);
    else if (command == "characteristics") o = cmd_characteristics(config, out, log);
    else if (command == "blowup-functional") o = cmd_blowup_functional(config, out, log);
    else if (command == "compare-kdv") o = cmd_compare_kdv(config, out, log);
    else if (command == "sweep") o = run_sweep(config, out, workers, log);
    else throw UsageError("unknown command '" + command + "'");
  } catch (const UsageError& e) {
    o = {};
    o.exit_code = exit_usage;
    o.message = e.what();
  } catch (const std::invalid_argument& e) {
    o = {};
    o.exit_code = exit_usage;
    o.message = e.what();
  } catch (const std::exception& e) {
    o = {};
    o.exit_code = exit_numerical;
    o.message = e.what();
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const std::string text = serialize(config);
  json info;
  info["command"] = command;
  info["exit_code"] = o.exit_code;
  info["message"] = o.message;
  info["config_sha256"] = sha256_hex(text);
  info["config"] = text;
  info["versions"] = version_info();
  info["wall_time_seconds"] = wall;
  info["summary"] = o.summary;
  out.write_manifest(std::move(info));
  return o;
}

}  // namespace wavebreak::cli
