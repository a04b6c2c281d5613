// Acceptance suite: one PASS/FAIL line per criterion.
//
//   wavebreak_acceptance            run everything
//   wavebreak_acceptance 4 6        run a subset

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "wavebreak/characteristics.hpp"
#include "wavebreak/diagnostics.hpp"
#include "wavebreak/evolve.hpp"
#include "wavebreak/hypotheses.hpp"
#include "wavebreak/kernel.hpp"
#include "wavebreak/model.hpp"
#include "wavebreak/numerics.hpp"
#include "wavebreak/profiles.hpp"

using namespace wavebreak;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "[FAILED: " << what << "] ";
    }
  }
};

Field profile(const Grid& g, const std::string& family, double a, double w = 1.0, double k = 1.0) {
  ProfileSpec p;
  p.family = family;
  p.amplitude = a;
  p.width = w;
  p.wavenumber = k;
  return make_profile(g, p);
}

RunResult run_to_breaking(const ModelSpec& model, const Field& phi, double final_time,
                          double cfl = 0.4, double snapshot_interval = 0.0) {
  RunParams p;
  p.final_time = final_time;
  p.cfl = cfl;
  p.snapshot_interval = snapshot_interval;
  return run(model, phi, p);
}

// Breaking time of a run without snapshots; falls back to fitting the series
// when the grid cannot follow the gradient up to the stop threshold.
std::optional<double> probe_breaking_time(const ModelSpec& model, const Field& phi, double final_time) {
  RunParams p;
  p.final_time = final_time;
  p.store_snapshots = false;
  const RunResult r = run(model, phi, p);
  const auto e = r.estimate ? r.estimate : estimate_breaking(r);
  if (!e) return std::nullopt;
  return e->t_est;
}

// ---------------------------------------------------------------------------

void multipliers(Outcome& out) {
  const Grid g = Grid::make(64, std::numbers::pi);
  const Field s = Field::sample(g, [](double x) { return std::sin(x); });
  const Field c = Field::sample(g, [](double x) { return std::cos(x); });
  const Symbol hilbert = [](double xi) { return Complex(0.0, xi > 0 ? -1.0 : (xi < 0 ? 1.0 : 0.0)); };
  const Field hs = apply_multiplier(s, hilbert);
  const Field hc = apply_multiplier(c, hilbert);
  double e1 = 0.0, e2 = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j) {
    e1 = std::max(e1, std::abs(hs.values()[j] + c.values()[j]));
    e2 = std::max(e2, std::abs(hc.values()[j] - s.values()[j]));
  }
  out.detail << "|H sin + cos| = " << e1 << ", |H cos - sin| = " << e2;
  out.require(e1 < 1e-12 && e2 < 1e-12, "Hilbert identities");

  const ModelSpec w = ModelSpec::make(Family::whitham);
  const double p0 = std::abs(w.symbol(1e-9) / 1e-9);
  bool monotone = true;
  double prev = whitham_phase(1e-9);
  for (int i = 1; i <= 200000; ++i) {
    const double xi = 100.0 * i / 200000.0;
    const double v = whitham_phase(xi);
    if (!(v < prev)) monotone = false;
    prev = v;
  }
  out.detail << ", p(0+) = " << p0 << ", monotone on (0,100]: " << (monotone ? "yes" : "no");
  out.require(std::abs(p0 - 1.0) < 1e-12, "p(0+) = 1");
  out.require(monotone, "monotone symbol");
}

// ---------------------------------------------------------------------------

void conservation(Outcome& out) {
  const Grid g = Grid::make(2048, 10.0);
  const Field phi = profile(g, "odd_ramp", 4.0);
  const std::vector<ModelSpec> models = {ModelSpec::make(Family::burgers_hilbert),
                                         ModelSpec::make(Family::whitham),
                                         ModelSpec::make(Family::fkdv, -0.5)};
  for (const auto& m : models) {
    const RunResult r = run_to_breaking(m, phi, 2.0);
    out.require(r.termination == Termination::breaking_detected && r.estimate.has_value(),
                m.describe() + " breaks");
    if (!r.estimate) continue;
    const double t_half = 0.5 * r.estimate->t_est;
    const double l0 = r.series.front().l2;
    double drift = 0.0;
    for (const auto& s : r.series) {
      if (s.t > t_half) break;
      drift = std::max(drift, std::abs(s.l2 - l0) / l0);
    }
    out.detail << to_string(m.family()) << ": T_est = " << r.estimate->t_est << ", drift = " << drift << "; ";
    out.require(drift < 1e-7, to_string(m.family()).data() + std::string(" L2 drift"));
  }
}

// ---------------------------------------------------------------------------

double energy_residual(const ModelSpec& model, const Field& phi, double t_end, double h, int order) {
  RunParams p;
  p.final_time = t_end;
  p.cfl = 0.1;
  p.snapshot_interval = h;
  p.snapshot_tightening = 1e9;
  const RunResult r = run(model, phi, p);
  return energy_law_residual(r, order).max_relative();
}

void energy_laws(Outcome& out) {
  const Grid g = Grid::make(1024, 10.0);
  const Field phi = profile(g, "odd_ramp", 4.0);
  const ModelSpec bh = ModelSpec::make(Family::burgers_hilbert);
  const ModelSpec wh = ModelSpec::make(Family::whitham);
  const auto t_break = probe_breaking_time(bh, phi, 2.0);
  if (!t_break) {
    out.require(false, "probe run breaks");
    return;
  }
  const double t_end = 0.5 * *t_break;
  const double h = t_end / 40.0;
  struct Case {
    const ModelSpec* model;
    int order;
  };
  for (const Case& c : {Case{&bh, 1}, Case{&bh, 2}, Case{&bh, 3}, Case{&wh, 3}}) {
    const double coarse = energy_residual(*c.model, phi, t_end, h, c.order);
    const double fine = energy_residual(*c.model, phi, t_end, 0.5 * h, c.order);
    out.detail << to_string(c.model->family()) << " k=" << c.order << ": " << coarse << " -> " << fine
               << " (x" << coarse / fine << "); ";
    out.require(coarse < 1e-3, "residual below 1e-3");
    out.require(coarse >= 8.0 * fine, "8x reduction");
  }
}

// ---------------------------------------------------------------------------

void burgers_oracle(Outcome& out) {
  const Grid g = Grid::make(1024, std::numbers::pi);
  const Field phi = profile(g, "neg_sine", 1.0);
  for (double eps : {1.0, 0.5}) {
    const RunResult r = run_to_breaking(ModelSpec::make(Family::burgers, 0.0, eps), phi, 4.0);
    const double expected = 1.0 / eps;
    if (!r.estimate) {
      out.require(false, "breaking detected");
      continue;
    }
    const double rel = std::abs(r.estimate->t_est - expected) / expected;
    out.detail << "eps=" << eps << ": T_est = " << r.estimate->t_est << " +- " << r.estimate->ci_halfwidth
               << " (rel err " << rel << ", sup u " << r.estimate->sup_u_at_detection << "); ";
    out.require(r.termination == Termination::breaking_detected, "breaking_detected");
    out.require(rel < 0.01, "within 1%");
  }
}

// ---------------------------------------------------------------------------

double riccati_worst(const RunResult& r, double t_max, std::size_t& trajectories) {
  const Advection adv = advect(r, default_seeds(r.snapshots.front().u, 0.1, 1.0));
  trajectories = adv.trajectories.size();
  double worst = 0.0;
  for (const auto& tr : adv.trajectories) {
    worst = std::max(worst, verify_riccati(tr, r.model, t_max).max_rel1);
  }
  return worst;
}

void riccati(Outcome& out) {
  const Grid g = Grid::make(1024, 10.0);
  const Field phi = profile(g, "odd_ramp", 2.0);
  const ModelSpec bh = ModelSpec::make(Family::burgers_hilbert);
  const auto t_break = probe_breaking_time(bh, phi, 4.0);
  if (!t_break) {
    out.require(false, "probe run breaks");
    return;
  }
  const double t_half = 0.5 * *t_break;
  RunParams p;
  p.final_time = t_half;
  p.cfl = 0.2;
  p.snapshot_interval = t_half / 60.0;
  p.snapshot_tightening = 1e9;
  std::size_t n_coarse = 0, n_fine = 0;
  const double coarse = riccati_worst(run(bh, phi, p), t_half, n_coarse);
  p.cfl *= 0.5;
  p.snapshot_interval *= 0.5;
  const double fine = riccati_worst(run(bh, phi, p), t_half, n_fine);
  out.detail << n_coarse << " characteristics, T_est = " << *t_break << ", max rel residual "
             << coarse << " -> " << fine << " (x" << coarse / fine << ")";
  out.require(n_coarse >= 33, ">= 33 characteristics");
  out.require(coarse < 1e-2, "residual below 1e-2");
  out.require(coarse >= 8.0 * fine, "8x reduction");
}

// ---------------------------------------------------------------------------

struct HeadlineCase {
  std::string label;
  TheoremInputs inputs;
  Family family;
};

void headline_case(Outcome& out, const HeadlineCase& hc, const ConstantSet& constants,
                   const std::optional<HurConstants>& hur) {
  const Grid g = Grid::make(4096, 10.0);
  const Field phi0 = profile(g, "odd_ramp", 1.0);
  const LambdaSearch ls = find_lambda(phi0, hc.inputs, constants, hur);
  const Field phi = ls.lambda * phi0;
  const ModelSpec model = ModelSpec::make(hc.family, hc.inputs.alpha, 1.0);
  const double t_guess = 4.0 / std::abs(ls.report.norms.inf_d1);
  RunParams p;
  p.final_time = t_guess;
  const RunResult r = run(model, phi, p);
  out.detail << hc.label << ": lambda = " << ls.lambda << ", " << to_string(r.termination);
  const bool broke = r.termination == Termination::breaking_detected && r.estimate.has_value();
  out.require(broke, hc.label + " breaking");
  if (!broke) return;
  out.require(r.estimate->sup_u_at_detection <= 10.0 * r.phi_sup, hc.label + " sup bound");
  const Advection adv = advect(r, default_seeds(phi, hc.inputs.delta, 1.0));
  const auto& br = *ls.report.bracket;
  const CharacteristicReport rep =
      verify_smallness_and_brackets(r, adv, hc.inputs.delta, 1.0, BracketSpec{br.first, br.second});
  out.detail << ", T_est = " << r.estimate->t_est << " in (" << br.first << ", " << br.second << ")"
             << ", checked to t = " << rep.checked_until << " (" << rep.window_end << ", |m|/|m0| = "
             << rep.checked_m / adv.m[0] << "), sigma seeds " << rep.sigma_seeds;
  for (const auto& c : rep.checks) {
    if (!c.pass) out.detail << " {" << c.name << ": margin " << c.worst_margin << " at t=" << c.at_time
                            << " " << c.note << "}";
    out.require(c.pass, hc.label + " " + c.name);
  }
  out.detail << "; ";
}

void headline(Outcome& out) {
  const ConstantSet constants = estimate_constants();
  const KernelTable table = kernel_table(ModelSpec::make(Family::whitham), hur_abscissae(1.0, 1.0, 96, 600));
  const HurConstants hur = estimate_hur_constants(table, 1.0);
  TheoremInputs bh;
  bh.theorem = Theorem::burgers_hilbert;
  bh.delta = 0.1;
  TheoremInputs wh;
  wh.theorem = Theorem::whitham;
  wh.delta = 0.05;
  TheoremInputs fk;
  fk.theorem = Theorem::fkdv;
  fk.delta = 0.01;
  fk.alpha = -0.8;
  headline_case(out, {"th:BH", bh, Family::burgers_hilbert}, constants, std::nullopt);
  headline_case(out, {"th:W", wh, Family::whitham}, constants, hur);
  headline_case(out, {"th:fKdV", fk, Family::fkdv}, constants, std::nullopt);
}

// ---------------------------------------------------------------------------

void rescaled_scaling(Outcome& out) {
  const Grid g = Grid::make(2048, 10.0);
  const Field phi = profile(g, "odd_ramp", 20.0);
  std::vector<double> le, lt;
  for (double eps : {0.05, 0.1, 0.2}) {
    const auto t_break = probe_breaking_time(ModelSpec::make(Family::whitham_rescaled, 0.0, eps), phi, 2.0 / eps);
    if (!t_break) {
      out.require(false, "breaking detected");
      return;
    }
    le.push_back(std::log(eps));
    lt.push_back(std::log(*t_break));
    out.detail << "eps=" << eps << ": T_est = " << *t_break << "; ";
  }
  const double slope = fit_line(le, lt).slope;
  out.detail << "slope " << slope;
  out.require(std::abs(slope + 1.0) <= 0.15, "slope -1 +- 0.15");
}

// ---------------------------------------------------------------------------

void kdv_comparison(Outcome& out) {
  const Grid g = Grid::make(1024, 32.0);
  const Field phi = profile(g, "gaussian_bump", 1.0);
  const double eps = 0.1;
  CompareParams p;
  const KdvComparison a = kdv_compare(eps, phi, p);
  p.horizon = a.horizon;
  const KdvComparison b = kdv_compare(0.5 * eps, phi, p);
  out.require(!a.truncated && !b.truncated, "runs cover the horizon");
  double lo = 1e300, hi = 0.0;
  for (std::size_t i = 0; i < std::min(a.t.size(), b.t.size()); ++i) {
    if (a.t[i] < 0.2 * a.horizon) continue;
    const double ratio = a.err_l2[i] / b.err_l2[i];
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  out.detail << "horizon " << a.horizon << ", L2 error ratio in [" << lo << ", " << hi << "], M_eff "
             << a.m_l2 << " / " << b.m_l2;
  out.require(lo >= 3.0 && hi <= 5.0, "ratio in [3, 5]");
}

// ---------------------------------------------------------------------------

void blowup_pipeline(Outcome& out) {
  const Grid g = Grid::make(4096, 48.0);
  const Field phi0 = profile(g, "odd_ramp", 1.0, 6.0);
  // smallest amplitude passing (b1), then a 25% margin
  const auto passes = [&](double a) { return check_b1(a * phi0).pass; };
  double lo = 1.0, hi = 2.0;
  while (!passes(hi)) hi *= 2.0;
  while (hi - lo > 0.01 * hi) (passes(0.5 * (lo + hi)) ? hi : lo) = 0.5 * (lo + hi);
  const Field phi = 1.25 * hi * phi0;
  const B1Result b1 = check_b1(phi);
  RunParams p;
  p.final_time = 2.0 * b1.t_upper;
  p.snapshot_interval = 0.01 * b1.t_upper;
  const RunResult r = run(ModelSpec::make(Family::burgers_hilbert), phi, p);
  const BlowupFunctionalRecord rec = blowup_functional(r);
  std::size_t bad_ineq = 0, bad_cs = 0, bad_h = 0, resolved = 0;
  for (std::size_t i = 0; i < rec.t.size(); ++i) {
    bad_cs += !rec.cauchy_schwarz_ok[i];
    if (!rec.resolved[i]) continue;
    ++resolved;
    bad_ineq += !rec.inequality_ok[i];
    bad_h += !rec.hilbert_ok[i];
  }
  out.detail << "amplitude " << 1.25 * hi << ", F(0) = " << b1.f0 << " >= " << b1.rhs << ", 4/F(0) = "
             << b1.t_upper << ", " << resolved << " resolved of " << rec.t.size()
             << " samples, violations (ineq/CS/H) " << bad_ineq << "/" << bad_cs << "/" << bad_h;
  out.require(b1.pass, "(b1) passes");
  out.require(!rec.truncated, "functional covers the run");
  out.require(bad_ineq == 0, "differential inequality");
  out.require(bad_cs == 0, "F^2 <= 2Q");
  out.require(bad_h == 0, "Hilbert term bound");
  const bool broke = r.termination == Termination::breaking_detected;
  out.require(broke, "gradient blow-up detected");
  if (broke) {
    const double t_b = r.series.back().t;
    out.detail << ", blow-up detected at t = " << t_b;
    if (r.estimate) out.detail << " (T_est " << r.estimate->t_est << ")";
    out.require(t_b <= 1.05 * b1.t_upper, "detected before 4/F(0)(1 + 5%)");
  }
}

// ---------------------------------------------------------------------------

void kernel_constants(Outcome& out) {
  const auto estimate = [](double eps, std::size_t scale) {
    const ModelSpec m = ModelSpec::make(eps == 1.0 ? Family::whitham : Family::whitham_rescaled, 0.0, eps);
    const KernelTable t = kernel_table(m, hur_abscissae(eps, 1.0, 64 * scale, 300 * scale));
    const HurConstants h = estimate_hur_constants(t, 1.0);
    return std::make_pair(h, hur_bounds_hold(t, h));
  };
  const auto [h1, ok1] = estimate(1.0, 1);
  const auto [h2, ok2] = estimate(1.0, 2);
  const double d0 = std::abs(h2.l0 - h1.l0) / h1.l0;
  const double dinf = std::abs(h2.l_inf - h1.l_inf) / h1.l_inf;
  out.detail << "L0 = " << h1.l0 << " (refined " << h2.l0 << "), Linf = " << h1.l_inf << " (refined " << h2.l_inf
             << ")";
  out.require(ok1 && ok2, "bounds hold at all samples");
  out.require(d0 < 0.05 && dinf < 0.05, "refinement change < 5%");
  for (double eps : {0.1, 0.01}) {
    const auto [he, oke] = estimate(eps, 1);
    const double r0 = he.l0_effective() / (std::pow(eps, -0.25) * h1.l0);
    const double rinf = he.l_inf_effective() / (std::pow(eps, -0.5) * h1.l_inf);
    out.detail << "; eps=" << eps << ": L0 ratio " << r0 << ", Linf ratio " << rinf;
    out.require(oke, "rescaled bounds hold");
    out.require(std::abs(r0 - 1.0) <= 0.1 && std::abs(rinf - 1.0) <= 0.1, "rescaled scaling within 10%");
  }
}

// ---------------------------------------------------------------------------

void constants_validity(Outcome& out) {
  const FamilyMaxima fm = scan_constant_families();
  const ConstantSet c = estimate_constants();
  out.detail << "c_sob " << c.c_sob << " vs max " << fm.c_sob << " (" << fm.members_sob << "), c_mor " << c.c_mor
             << " vs max " << fm.c_mor << " (" << fm.members_mor << "), c_gn " << c.c_gn << " vs max " << fm.c_gn
             << " (" << fm.members_gn << ")";
  out.require(fm.c_sob <= c.c_sob && fm.c_mor <= c.c_mor && fm.c_gn <= c.c_gn, "constants dominate");
  out.require(fm.c_mor >= 0.95 && fm.c_mor <= 1.0, "c_mor family maximum in [0.95, 1]");
  out.require(fm.members_sob >= 200 && fm.members_mor >= 200 && fm.members_gn >= 200, ">= 200 members");
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
      {"multiplier identities", multipliers},
      {"L2 conservation", conservation},
      {"energy laws", energy_laws},
      {"Burgers breaking time", burgers_oracle},
      {"Riccati residual along characteristics", riccati},
      {"certified data break inside the bracket", headline},
      {"rescaled breaking time scales as 1/eps", rescaled_scaling},
      {"Whitham/KdV error ratio", kdv_comparison},
      {"half-line functional", blowup_pipeline},
      {"kernel constants", kernel_constants},
      {"embedding constants", constants_validity},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!only.empty() && !only.count(id)) continue;
    Outcome out;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].second(out);
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail << "[exception: " << e.what() << "]";
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %2d %s: %s (%.1f s) %s\n", id, out.pass ? "PASS" : "FAIL", criteria[i].first.c_str(),
                secs, out.detail.str().c_str());
    std::fflush(stdout);
    failures += !out.pass;
  }
  return failures == 0 ? 0 : 1;
}
