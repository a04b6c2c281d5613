#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wavebreak/evolve.hpp"

namespace wavebreak {

/// Record along dX/dt = c u(X, t), X(0) = seed.
struct Trajectory {
  double seed = 0.0;
  std::vector<double> t;
  std::vector<double> x;
  std::vector<double> v0;  // u(X, t)
  std::vector<double> v1;  // u_x(X, t)
  std::vector<double> k0;  // -D[u](X, t)
  std::vector<double> k1;  // -D[u_x](X, t)
  std::vector<double> r;   // m(0)/v1, NaN where v1 does not share the sign of m(0)
};

struct Advection {
  std::vector<Trajectory> trajectories;
  std::vector<double> t;
  /// min over the refined grid minimum and the seeds' v1 at each time.
  std::vector<double> m;
  bool cadence_ok = true;
  std::optional<double> cadence_violation;  // first snapshot interval start that failed
  double max_relative_change = 0.0;
};

struct AdvectOptions {
  double t_max = -1.0;            // < 0: last snapshot
  double cadence_tolerance = 0.01;  // max |u(t+h) - u(t)| / ||u||_inf between snapshots
};

/// Integrates all seeds through the stored snapshots with RK4 per snapshot
/// interval, using cubic Hermite interpolation in time for the mid points.
/// Stops (and reports) at the first interval whose change exceeds the
/// cadence tolerance. Throws std::invalid_argument for seeds outside [-L, L).
Advection advect(const RunResult& result, const std::vector<double>& seeds,
                 const AdvectOptions& options = {});

struct Forcings {
  double k0 = 0.0;
  double k1 = 0.0;
};

/// K0 = -D[u](X), K1 = -D[u_x](X) evaluated spectrally.
Forcings eval_forcings(const ModelSpec& model, const Field& u, double x);

/// argmin of phi', `uniform` evenly spaced points, the edges of the initial
/// Sigma set {phi' <= (1 - delta/eps) m(0)} around the argmin (located by
/// bisection), and `cluster` points on each side of the argmin at 1/4 of
/// the way to the edge and closer. The Sigma set shrinks towards the argmin,
/// so only the clustered seeds stay in it late in the run.
std::vector<double> default_seeds(const Field& phi, double delta, double eps, std::size_t uniform = 32,
                                  std::size_t cluster = 4);

struct RiccatiResidual {
  std::vector<double> t;
  std::vector<double> r1;  // dv1/dt + c v1^2 + K1
  std::vector<double> r0;  // dv0/dt + K0
  double max_rel1 = 0.0;
  double rms_rel1 = 0.0;
  double max_rel0 = 0.0;
};

/// Residuals with dv/dt from five-point differences. Relative values divide
/// by max(c v1^2, |K1|, floor) with floor = floor_fraction times the largest
/// such scale on the window, or absolute_floor if larger (pass a fraction of
/// the scale over all seeds so far-field seeds are not judged on round-off).
/// Samples with t > t_max are ignored.
RiccatiResidual verify_riccati(const Trajectory& traj, const ModelSpec& model, double t_max = -1.0,
                               double floor_fraction = 1e-3, double absolute_floor = 0.0);

struct CheckOutcome {
  std::string name;
  bool pass = true;
  double worst_margin = 0.0;  // most negative (or smallest) margin seen
  double at_time = 0.0;
  double at_seed = 0.0;
  std::size_t evaluated = 0;
  std::string note;
};

struct CharacteristicReport {
  double delta = 0.0;
  double epsilon = 1.0;
  double cutoff_factor = 0.5;  // checks run while |m| <= cutoff*m_stop*|m(0)|
  double resolution_tail = 1e-12;
  double checked_until = 0.0;
  double checked_m = 0.0;       // m at checked_until
  std::string window_end;       // what ended the window: slope cutoff, resolution or end of record
  std::size_t sigma_seeds = 0;  // seeds in Sigma at checked_until
  std::vector<CheckOutcome> checks;
  bool all_pass() const;
};

struct BracketSpec {
  double lo = 0.0;
  double hi = 0.0;
};

/// Checks the smallness condition |K1| < delta^2 m^2 over seeds and the grid,
/// the nesting of the Sigma sets, the q/r bounds and the integral bounds on
/// q; the breaking time against `bracket` when both are provided. Samples
/// are used while |m| <= cutoff*m_stop*|m(0)| and the snapshot's spectral
/// tail stays at or below resolution_tail. The slope at the minimum follows
/// the Riccati law to about 1% only while the tail is below ~1e-10, which is
/// why the default is much stricter than the run's under-resolution flag.
CharacteristicReport verify_smallness_and_brackets(const RunResult& result, const Advection& adv,
                                                   double delta, double eps,
                                                   std::optional<BracketSpec> bracket = std::nullopt,
                                                   double cutoff_factor = 0.5,
                                                   double resolution_tail = 1e-12);

}  // namespace wavebreak
