#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wavebreak/evolve.hpp"
#include "wavebreak/hypotheses.hpp"

namespace wavebreak {

struct DiagnosticSeries {
  std::string name;
  std::vector<double> t;
  std::vector<double> value;
  std::vector<double> reference;
  std::vector<double> residual;  // value - reference (or rhs - lhs for inequalities)

  /// max |residual| / max |reference|.
  double max_relative() const;
};

/// d/dt ||d_x^k u||^2 from the snapshots (five-point differences) against
/// -c_k c int u_x (d_x^k u)^2 with c_1 = 1, c_2 = 5, c_3 = 7. Order 3 is
/// accepted for whitham, whitham_rescaled, burgers_hilbert and fkdv only.
/// Snapshots after t_max (if >= 0) are ignored.
DiagnosticSeries energy_law_residual(const RunResult& result, int order, double t_max = -1.0);

/// ||u_xx||_inf <= c_gn ||u_x||_inf^{1/3} ||u_xxx||_2^{2/3} per snapshot;
/// residual = rhs - lhs.
DiagnosticSeries gn_chain_check(const RunResult& result, const ConstantSet& constants);

struct BlowupFunctionalRecord {
  std::vector<double> t;
  std::vector<double> y;
  std::vector<double> f;
  std::vector<double> q;
  std::vector<double> dfdt;
  std::vector<double> rhs_bound;  // F^2/2 - sqrt(2) ||u_0||_2
  std::vector<double> hilbert_term;  // int_0^40 H(v) e^{-x} dx
  std::vector<bool> inequality_ok;   // dF/dt >= rhs_bound - tol
  std::vector<bool> cauchy_schwarz_ok;  // F^2 <= 2Q
  std::vector<bool> hilbert_ok;         // |hilbert_term| <= sqrt(2)||u_0|| (1 + 1e-8)
  std::vector<bool> resolved;  // spectral tail at or below the run's threshold
  double u0_l2 = 0.0;
  bool truncated = false;  // advection stopped early (snapshot cadence too coarse)
  /// Every flag holds on the resolved samples. Once the front is no longer
  /// resolved the computed field is not a smooth solution and the identity
  /// behind the inequality does not apply.
  bool all_ok() const;
};

/// Half-line functional of the Burgers-Hilbert run in the frame moving with
/// dY/dt = u(Y, t), Y(0) = 0. Integrals over [0, 40] by composite
/// Gauss-Legendre. Requires burgers_hilbert and L >= 48.
BlowupFunctionalRecord blowup_functional(const RunResult& result);

struct KdvComparison {
  double epsilon = 0.0;
  double horizon = 0.0;
  std::vector<double> t;
  std::vector<double> err_l2;
  std::vector<double> err_h1;
  double m_l2 = 0.0;       // least-squares M in err = M eps^2 t on [0.2, 1] horizon
  double m_h1 = 0.0;
  double log_slope = 0.0;  // slope of log(err_l2/(eps^2 t)) against log t on the same window
  bool truncated = false;
  std::string note;
};

struct CompareParams {
  std::optional<double> horizon;  // default horizon_coefficient/(eps ||phi||_{H^2})
  double horizon_coefficient = 0.5;
  std::size_t samples = 64;
  double cfl = 0.4;
};

/// Runs the rescaled Whitham equation and its KdV approximation from phi and
/// records their difference at matched times.
KdvComparison kdv_compare(double epsilon, const Field& phi, const CompareParams& params = {});

}  // namespace wavebreak
