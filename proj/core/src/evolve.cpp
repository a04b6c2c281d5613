#include "wavebreak/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "fft.hpp"

namespace wavebreak {

namespace {

bool finite(std::span<const Complex> c) {
  for (const auto& z : c) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::reached_final_time:
      return "reached_final_time";
    case Termination::breaking_detected:
      return "breaking_detected";
    case Termination::aborted:
      return "aborted";
  }
  return "unknown";
}

Stepper::Stepper(const ModelSpec& model, const Grid& grid, bool nonlinear)
    : model_(model), grid_(grid), nonlinear_(nonlinear) {
  const Multiplier mult = model.multiplier(grid);
  const auto table = mult.table();
  symbol_.assign(table.begin(), table.end());
  const std::size_t m = grid.num_modes();
  half_.resize(m);
  full_.resize(m);
  k1_.resize(m);
  k2_.resize(m);
  k3_.resize(m);
  k4_.resize(m);
  tmp_.resize(m);
  phys_.resize(grid.size());
}

void Stepper::nonlinear_term(std::span<const Complex> c, std::span<Complex> out) {
  if (!nonlinear_) {
    std::fill(out.begin(), out.end(), Complex{});
    return;
  }
  const auto& fft = detail::RealFft::get(grid_.size());
  fft.inverse(c, phys_);
  for (auto& v : phys_) v *= v;
  fft.forward(phys_, out);
  const double half_c = 0.5 * model_.transport();
  const std::size_t cutoff = grid_.dealias_cutoff();
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k] = k <= cutoff && k < grid_.nyquist()
                 ? Complex(0.0, -half_c * grid_.wavenumber(k)) * out[k]
                 : Complex{};
  }
}

void Stepper::rhs(std::span<const Complex> c, std::span<Complex> out) {
  nonlinear_term(c, out);
  const std::size_t cutoff = grid_.dealias_cutoff();
  for (std::size_t k = 0; k <= cutoff; ++k) out[k] += symbol_[k] * c[k];
}

bool Stepper::advance(std::vector<Complex>& c, double h) {
  const std::size_t m = c.size();
  if (h != cached_h_) {
    for (std::size_t k = 0; k < m; ++k) {
      half_[k] = std::exp(0.5 * h * symbol_[k]);
      full_[k] = std::exp(h * symbol_[k]);
    }
    cached_h_ = h;
  }
  nonlinear_term(c, k1_);
  for (std::size_t k = 0; k < m; ++k) tmp_[k] = half_[k] * (c[k] + 0.5 * h * k1_[k]);
  nonlinear_term(tmp_, k2_);
  for (std::size_t k = 0; k < m; ++k) tmp_[k] = half_[k] * c[k] + 0.5 * h * k2_[k];
  nonlinear_term(tmp_, k3_);
  for (std::size_t k = 0; k < m; ++k) tmp_[k] = full_[k] * c[k] + h * half_[k] * k3_[k];
  nonlinear_term(tmp_, k4_);
  for (std::size_t k = 0; k < m; ++k) {
    c[k] = full_[k] * c[k] +
           h / 6.0 * (full_[k] * k1_[k] + 2.0 * half_[k] * (k2_[k] + k3_[k]) + k4_[k]);
  }
  c.front().imag(0.0);
  c.back() = 0.0;
  return finite(c);
}

double Stepper::stable_dt(std::span<const double> u_values, std::span<const double> ux_values,
                          double cfl) const {
  const double c = std::abs(model_.transport());
  const double speed = c * max_abs(u_values) + model_.linear_speed();
  const double slope = c * max_abs(ux_values);
  double dt = std::numeric_limits<double>::infinity();
  if (speed > 0.0) dt = std::min(dt, cfl / (grid_.dealiased_wavenumber() * speed));
  if (slope > 0.0) dt = std::min(dt, cfl / slope);
  return dt;
}

SimState step(const SimState& state, const ModelSpec& model, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be positive");
  Stepper stepper(model, state.u.grid());
  std::vector<Complex> c(state.u.coefficients().begin(), state.u.coefficients().end());
  for (std::size_t k = state.u.grid().dealias_cutoff() + 1; k < c.size(); ++k) c[k] = 0.0;
  SimState next = state;
  next.dt = dt;
  if (!stepper.advance(c, dt)) {
    next.aborted = true;
    next.diagnostic = "non-finite coefficients after step at t = " + std::to_string(state.t);
    return next;
  }
  next.u = Field::from_coefficients(state.u.grid(), std::move(c));
  next.t = state.t + dt;
  next.step_count = state.step_count + 1;
  return next;
}

double boundary_decay(const Field& phi) {
  double worst = std::abs(phi.values()[0]);
  for (int order = 1; order <= 3; ++order) {
    worst = std::max(worst, std::abs(derivative(phi, order).values()[0]));
  }
  return worst;
}

namespace {

struct Recorder {
  const Grid& grid;

  ScalarSample sample(double t, std::span<const Complex> c, double dt, Field* u_out,
                      Field* ux_out) const {
    Field u = Field::from_coefficients(grid, {c.begin(), c.end()});
    Field ux = derivative(u, 1);
    ScalarSample s;
    s.t = t;
    s.dt = dt;
    const Extremum e = refined_minimum(ux);
    s.m = e.value;
    s.argmin_x = e.x;
    s.l2 = norm(u, NormKind::L2());
    s.linf_u = norm(u, NormKind::Linf());
    s.linf_ux = norm(ux, NormKind::Linf());
    s.l2_uxx = norm(derivative(u, 2), NormKind::L2());
    s.l2_uxxx = norm(derivative(u, 3), NormKind::L2());
    s.tail = spectral_tail_fraction(c, grid);
    if (u_out) *u_out = std::move(u);
    if (ux_out) *ux_out = std::move(ux);
    return s;
  }
};

}  // namespace

RunResult run(const ModelSpec& model, const Field& phi, const RunParams& params) {
  if (!(params.final_time > 0.0)) throw std::invalid_argument("final_time must be positive");
  if (!(params.cfl > 0.0)) throw std::invalid_argument("cfl must be positive");
  if (!(params.m_stop > 1.0)) throw std::invalid_argument("m_stop must exceed 1");
  const Grid& grid = phi.grid();
  RunResult result;
  result.model = model;
  result.grid = grid;
  result.params = params;
  if (const double decay = boundary_decay(phi); decay > 1e-10) {
    std::ostringstream os;
    os << "initial datum does not decay at the domain boundary (max |d^k phi(-L)| = " << decay << ")";
    result.warnings.push_back(os.str());
  }

  Stepper stepper(model, grid);
  std::vector<Complex> c(phi.coefficients().begin(), phi.coefficients().end());
  for (std::size_t k = grid.dealias_cutoff() + 1; k < c.size(); ++k) c[k] = 0.0;
  std::vector<Complex> rhs(c.size());
  const Recorder recorder{grid};

  Field u = Field::zero(grid);
  Field ux = Field::zero(grid);
  double t = 0.0;
  result.series.push_back(recorder.sample(t, c, 0.0, &u, &ux));
  result.m0 = result.series.front().m;
  result.phi_sup = norm(phi, NormKind::Linf());
  const double m_ref = std::abs(result.m0);
  const double dt_cap = params.final_time / 100.0;

  double next_snapshot = std::numeric_limits<double>::infinity();
  bool capped = false;
  auto store = [&](double time) {
    if (result.snapshots.size() >= params.max_snapshots) {
      if (!capped) result.warnings.push_back("snapshot storage capped at t = " + std::to_string(time));
      capped = true;
      next_snapshot = std::numeric_limits<double>::infinity();
      return;
    }
    stepper.rhs(c, rhs);
    result.snapshots.push_back({time, u, rhs});
    double interval = params.final_time - time;
    if (params.snapshot_interval > 0.0) interval = std::min(interval, params.snapshot_interval);
    const double ut = max_abs(Field::from_coefficients(grid, rhs).values());
    const double usup = max_abs(u.values());
    if (ut > 0.0 && usup > 0.0) interval = std::min(interval, params.snapshot_tightening * usup / ut);
    next_snapshot = time + interval;
  };
  if (params.store_snapshots) store(t);

  long steps = 0;
  result.termination = Termination::reached_final_time;
  while (t < params.final_time) {
    double dt = stepper.stable_dt(u.values(), ux.values(), params.cfl);
    dt = std::min({dt, dt_cap, params.final_time - t});
    double target = t + dt;
    // Stretch by up to 1% onto a snapshot time rather than leave a sliver step.
    if (params.store_snapshots && next_snapshot <= target + 0.01 * dt) target = next_snapshot;
    if (params.final_time - target < 1e-12 * params.final_time) target = params.final_time;
    dt = target - t;
    if (dt < params.dt_min) {
      std::string note;
      result.estimate = estimate_breaking(result, &note);
      if (result.estimate) {
        result.termination = Termination::breaking_detected;
        result.warnings.push_back("time step fell below dt_min; breaking inferred from the Riccati trend");
      } else {
        result.termination = Termination::aborted;
        result.message = "time step fell below dt_min at t = " + std::to_string(t);
      }
      break;
    }
    if (!stepper.advance(c, dt)) {
      result.termination = Termination::aborted;
      result.message = "non-finite solution at t = " + std::to_string(t);
      break;
    }
    t = target;
    ++steps;
    const ScalarSample s = recorder.sample(t, c, dt, &u, &ux);
    result.series.push_back(s);
    if (!result.under_resolved_since && s.tail > params.tail_threshold) result.under_resolved_since = t;
    const bool breaking = m_ref > 0.0 && s.m < 0.0 && std::abs(s.m) >= params.m_stop * m_ref;
    const bool sup_ok = s.linf_u <= params.sup_factor * result.phi_sup;
    if (params.store_snapshots && (t >= next_snapshot || breaking || t >= params.final_time)) store(t);
    if (breaking) {
      if (sup_ok) {
        result.termination = Termination::breaking_detected;
      } else {
        result.termination = Termination::aborted;
        result.message = "||u||_inf exceeded the bound while the slope grew";
      }
      break;
    }
    if (!sup_ok) {
      result.termination = Termination::aborted;
      result.message = "||u||_inf exceeded " + std::to_string(params.sup_factor) +
                       "*||phi||_inf at t = " + std::to_string(t);
      break;
    }
    if (steps >= params.max_steps) {
      result.termination = Termination::aborted;
      result.message = "step limit reached at t = " + std::to_string(t);
      break;
    }
  }
  if (result.termination == Termination::breaking_detected && !result.estimate) {
    std::string note;
    result.estimate = estimate_breaking(result, &note);
    if (!note.empty()) result.warnings.push_back(note);
  }
  if (result.under_resolved_since) {
    result.warnings.push_back("spectral tail exceeded " + std::to_string(params.tail_threshold) +
                              " from t = " + std::to_string(*result.under_resolved_since));
  }
  return result;
}

std::optional<BreakingEstimate> estimate_breaking(const RunResult& result, std::string* note) {
  std::vector<double> ts, ms, ts_all, ms_all;
  for (const auto& s : result.series) {
    ts_all.push_back(s.t);
    ms_all.push_back(s.m);
    if (s.tail <= result.params.tail_threshold) {
      ts.push_back(s.t);
      ms.push_back(s.m);
    }
  }
  const double sup = result.series.empty() ? 0.0 : result.series.back().linf_u;
  try {
    BreakingEstimate e = detect_breaking(ts, ms, result.params.window_fraction);
    e.sup_u_at_detection = sup;
    return e;
  } catch (const NoBreakingEstimate& resolved_error) {
    try {
      BreakingEstimate e = detect_breaking(ts_all, ms_all, result.params.window_fraction);
      e.sup_u_at_detection = sup;
      e.resolved_window = false;
      if (note) {
        *note = std::string("breaking fit includes under-resolved samples (") +
                resolved_error.what() + ")";
      }
      return e;
    } catch (const NoBreakingEstimate& e) {
      if (note) *note = e.what();
      return std::nullopt;
    }
  }
}

void coefficients_at(const RunResult& result, double t, std::vector<Complex>& out) {
  const auto& snaps = result.snapshots;
  if (snaps.empty()) throw std::invalid_argument("run has no snapshots");
  if (t < snaps.front().t || t > snaps.back().t) {
    throw std::out_of_range("time " + std::to_string(t) + " outside the snapshot range");
  }
  auto it = std::upper_bound(snaps.begin(), snaps.end(), t,
                             [](double v, const Snapshot& s) { return v < s.t; });
  const std::size_t hi = std::min<std::size_t>(static_cast<std::size_t>(it - snaps.begin()),
                                               snaps.size() - 1);
  const std::size_t lo = hi == 0 ? 0 : hi - 1;
  const auto c0 = snaps[lo].u.coefficients();
  out.resize(c0.size());
  if (lo == hi || t == snaps[lo].t) {
    std::copy(c0.begin(), c0.end(), out.begin());
    return;
  }
  const auto c1 = snaps[hi].u.coefficients();
  const auto& d0 = snaps[lo].rhs;
  const auto& d1 = snaps[hi].rhs;
  const double h = snaps[hi].t - snaps[lo].t;
  const double s = (t - snaps[lo].t) / h;
  const double h00 = (1.0 + 2.0 * s) * (1.0 - s) * (1.0 - s);
  const double h10 = s * (1.0 - s) * (1.0 - s);
  const double h01 = s * s * (3.0 - 2.0 * s);
  const double h11 = s * s * (s - 1.0);
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k] = h00 * c0[k] + h10 * h * d0[k] + h01 * c1[k] + h11 * h * d1[k];
  }
}

Field field_at(const RunResult& result, double t) {
  std::vector<Complex> c;
  coefficients_at(result, t, c);
  return Field::from_coefficients(result.grid, std::move(c));
}

}  // namespace wavebreak
