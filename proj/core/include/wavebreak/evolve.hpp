#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wavebreak/breaking.hpp"
#include "wavebreak/field.hpp"
#include "wavebreak/model.hpp"

namespace wavebreak {

struct SimState {
  double t = 0.0;
  Field u;
  long step_count = 0;
  double dt = 0.0;
  bool aborted = false;
  std::string diagnostic;
};

/// Integrating-factor RK4 for u_t + c u u_x = D[u] on one grid.
///
/// The linear part exp(h p(xi)) is applied exactly; the quadratic term
/// -(c/2) d_x(u^2) is formed pseudospectrally with the 2/3 rule. The state is
/// kept dealiased.
class Stepper {
 public:
  Stepper(const ModelSpec& model, const Grid& grid, bool nonlinear = true);

  const ModelSpec& model() const { return model_; }
  const Grid& grid() const { return grid_; }

  /// Advances coefficients in place by h. Returns false if the result is not finite.
  bool advance(std::vector<Complex>& c, double h);
  /// Full right-hand side D[u] - c u u_x (dealiased) in coefficient space.
  void rhs(std::span<const Complex> c, std::span<Complex> out);
  /// CFL limit for the given state.
  double stable_dt(std::span<const double> u_values, std::span<const double> ux_values,
                   double cfl) const;

 private:
  void nonlinear_term(std::span<const Complex> c, std::span<Complex> out);

  ModelSpec model_;
  Grid grid_;
  bool nonlinear_;
  std::vector<Complex> symbol_;
  std::vector<Complex> half_, full_;
  std::vector<Complex> k1_, k2_, k3_, k4_, tmp_;
  std::vector<double> phys_;
  double cached_h_ = -1.0;
};

/// One step of size dt. Aborts (state.aborted) on non-finite output.
SimState step(const SimState& state, const ModelSpec& model, double dt);

enum class Termination { reached_final_time, breaking_detected, aborted };
std::string_view to_string(Termination t);

struct RunParams {
  double final_time = 1.0;
  double cfl = 0.4;
  double m_stop = 200.0;        // stop once |m| >= m_stop*|m(0)|
  double sup_factor = 10.0;     // breaking requires ||u||_inf <= sup_factor*||phi||_inf
  double dt_min = 1e-12;
  double snapshot_interval = 0.0;  // 0: only the automatic cadence
  double snapshot_tightening = 0.005;  // snapshot spacing <= this * ||u||_inf/||u_t||_inf
  bool store_snapshots = true;
  std::size_t max_snapshots = 20000;  // storage stops (with a warning) beyond this
  double tail_threshold = 1e-6;
  double window_fraction = 0.3;
  long max_steps = 5'000'000;
};

struct Snapshot {
  double t = 0.0;
  Field u;
  std::vector<Complex> rhs;  // coefficients of u_t
};

struct ScalarSample {
  double t = 0.0;
  double m = 0.0;
  double argmin_x = 0.0;
  double l2 = 0.0;
  double linf_u = 0.0;
  double linf_ux = 0.0;
  double l2_uxx = 0.0;
  double l2_uxxx = 0.0;
  double dt = 0.0;
  double tail = 0.0;
};

struct RunResult {
  ModelSpec model = ModelSpec::make(Family::burgers);
  Grid grid = Grid::make(8, 1.0);
  RunParams params;
  std::vector<Snapshot> snapshots;
  std::vector<ScalarSample> series;
  Termination termination = Termination::reached_final_time;
  std::string message;
  std::vector<std::string> warnings;
  double m0 = 0.0;
  double phi_sup = 0.0;
  std::optional<double> under_resolved_since;
  std::optional<BreakingEstimate> estimate;
};

/// Integrates from phi until final_time, breaking or abort.
RunResult run(const ModelSpec& model, const Field& phi, const RunParams& params);

/// Fits the breaking time on a finished run, preferring samples whose
/// spectral tail is below the threshold.
std::optional<BreakingEstimate> estimate_breaking(const RunResult& result, std::string* note = nullptr);

/// Cubic Hermite interpolation in time of the snapshot coefficients.
/// t must lie within the snapshot range.
void coefficients_at(const RunResult& result, double t, std::vector<Complex>& out);
Field field_at(const RunResult& result, double t);

/// Largest boundary value of |phi|, |phi'|, |phi''|, |phi'''| at x = -L.
double boundary_decay(const Field& phi);

}  // namespace wavebreak
