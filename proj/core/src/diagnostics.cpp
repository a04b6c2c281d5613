#include "wavebreak/diagnostics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "wavebreak/characteristics.hpp"
#include "wavebreak/numerics.hpp"

namespace wavebreak {

double DiagnosticSeries::max_relative() const {
  double r = 0.0, s = 0.0;
  for (double v : residual) r = std::max(r, std::abs(v));
  for (double v : reference) s = std::max(s, std::abs(v));
  return s > 0.0 ? r / s : r;
}

namespace {

double grid_integral(const Grid& g, const std::vector<double>& f) {
  double s = 0.0;
  for (double v : f) s += v;
  return s * g.spacing();
}

std::size_t snapshot_count(const RunResult& r, double t_max) {
  if (t_max < 0.0) return r.snapshots.size();
  std::size_t n = 0;
  while (n < r.snapshots.size() && r.snapshots[n].t <= t_max * (1.0 + 1e-14)) ++n;
  return n;
}

}  // namespace

DiagnosticSeries energy_law_residual(const RunResult& result, int order, double t_max) {
  if (order < 1 || order > 3) throw std::invalid_argument("energy law order must be 1, 2 or 3");
  const Family fam = result.model.family();
  if (order == 3 && !(fam == Family::whitham || fam == Family::whitham_rescaled ||
                      fam == Family::burgers_hilbert || fam == Family::fkdv)) {
    throw std::invalid_argument("the third-order energy law is derived for whitham, whitham_rescaled, "
                                "burgers_hilbert and fkdv only");
  }
  const std::size_t n = snapshot_count(result, t_max);
  if (n < 5) throw std::invalid_argument("energy law needs at least five snapshots in the window");
  static constexpr std::array<double, 4> coeff = {0.0, 1.0, 5.0, 7.0};
  const double c = result.model.transport();
  DiagnosticSeries out;
  out.name = "energy_law_order_" + std::to_string(order);
  std::vector<double> energy;
  for (std::size_t i = 0; i < n; ++i) {
    const Field& u = result.snapshots[i].u;
    const Field ux = derivative(u, 1);
    const Field uk = order == 1 ? ux : derivative(u, order);
    out.t.push_back(result.snapshots[i].t);
    const double e = norm(uk, NormKind::L2());
    energy.push_back(e * e);
    std::vector<double> integrand(u.grid().size());
    for (std::size_t j = 0; j < integrand.size(); ++j) {
      integrand[j] = ux.values()[j] * uk.values()[j] * uk.values()[j];
    }
    out.reference.push_back(-coeff[static_cast<std::size_t>(order)] * c * grid_integral(u.grid(), integrand));
  }
  out.value = differentiate(out.t, energy);
  for (std::size_t i = 0; i < n; ++i) out.residual.push_back(out.value[i] - out.reference[i]);
  return out;
}

DiagnosticSeries gn_chain_check(const RunResult& result, const ConstantSet& constants) {
  DiagnosticSeries out;
  out.name = "gn_chain";
  for (const auto& s : result.snapshots) {
    const double lhs = norm(derivative(s.u, 2), NormKind::Linf());
    const double rhs = constants.c_gn * std::cbrt(norm(derivative(s.u, 1), NormKind::Linf())) *
                       std::pow(norm(derivative(s.u, 3), NormKind::L2()), 2.0 / 3.0);
    out.t.push_back(s.t);
    out.value.push_back(lhs);
    out.reference.push_back(rhs);
    out.residual.push_back(rhs - lhs);
  }
  return out;
}

bool BlowupFunctionalRecord::all_ok() const {
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (resolved[i] && !(inequality_ok[i] && cauchy_schwarz_ok[i] && hilbert_ok[i])) return false;
  }
  return true;
}

BlowupFunctionalRecord blowup_functional(const RunResult& result) {
  if (result.model.family() != Family::burgers_hilbert) {
    throw std::invalid_argument("the half-line functional is defined for burgers_hilbert runs");
  }
  const Grid& g = result.grid;
  if (g.half_length() < 48.0) throw std::invalid_argument("blowup_functional needs L >= 48");
  if (result.snapshots.size() < 5) throw std::invalid_argument("blowup_functional needs snapshots");

  // Composite Gauss-Legendre nodes on [0, 40] with the e^{-x} weight folded in.
  static constexpr std::array<double, 4> gx = {0.1834346424956498, 0.5255324099163290,
                                               0.7966664774136267, 0.9602898564975363};
  static constexpr std::array<double, 4> gw = {0.3626837833783620, 0.3137066458778873,
                                               0.2223810344533745, 0.1012285362903763};
  constexpr int panels = 160;
  const double h = 40.0 / panels;
  std::vector<double> nodes, weights;
  for (int p = 0; p < panels; ++p) {
    const double mid = (p + 0.5) * h;
    for (std::size_t i = 0; i < gx.size(); ++i) {
      for (double sgn : {-1.0, 1.0}) {
        const double x = mid + sgn * 0.5 * h * gx[i];
        nodes.push_back(x);
        weights.push_back(0.5 * h * gw[i] * std::exp(-x));
      }
    }
  }
  // exp(i xi_k x_j) per node; fourier_phases adds L, so pass x_j - L.
  std::vector<std::vector<Complex>> node_phases;
  node_phases.reserve(nodes.size());
  for (double x : nodes) node_phases.push_back(fourier_phases(g, x - g.half_length()));

  const Advection path = advect(result, {0.0});
  BlowupFunctionalRecord rec;
  rec.truncated = !path.cadence_ok;
  rec.u0_l2 = norm(result.snapshots.front().u, NormKind::L2());
  const double bound_const = std::sqrt(2.0) * rec.u0_l2;
  const auto& y = path.trajectories.front();

  std::vector<Complex> shifted, hilbert;
  for (std::size_t i = 0; i < path.t.size(); ++i) {
    const auto c = result.snapshots[i].u.coefficients();
    const auto ph = fourier_phases(g, y.x[i]);
    shifted.resize(c.size());
    hilbert.resize(c.size());
    for (std::size_t k = 0; k < c.size(); ++k) {
      shifted[k] = c[k] * ph[k];
      hilbert[k] = (k == 0 || k == g.nyquist()) ? Complex{} : Complex(0.0, -1.0) * shifted[k];
    }
    const double v0 = evaluate_with_phases(c, ph);
    double f = 0.0, q = 0.0, hterm = 0.0;
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      const double w = evaluate_with_phases(shifted, node_phases[j]) - v0;
      f -= weights[j] * w;
      q += 0.5 * weights[j] * w * w;
      hterm += weights[j] * evaluate_with_phases(hilbert, node_phases[j]);
    }
    rec.t.push_back(path.t[i]);
    rec.y.push_back(y.x[i]);
    rec.f.push_back(f);
    rec.q.push_back(q);
    rec.hilbert_term.push_back(hterm);
    rec.rhs_bound.push_back(0.5 * f * f - bound_const);
  }
  if (rec.t.size() >= 5) {
    rec.dfdt = differentiate(rec.t, rec.f);
  } else {
    rec.dfdt.assign(rec.t.size(), 0.0);
    rec.truncated = true;
  }
  for (std::size_t i = 0; i < rec.t.size(); ++i) {
    const double f = rec.f[i];
    const double tol = 1e-3 * std::max(0.5 * f * f, bound_const);
    rec.inequality_ok.push_back(rec.dfdt[i] >= rec.rhs_bound[i] - tol);
    rec.cauchy_schwarz_ok.push_back(f * f <= 2.0 * rec.q[i] * (1.0 + 1e-10) + 1e-300);
    rec.hilbert_ok.push_back(std::abs(rec.hilbert_term[i]) <= bound_const * (1.0 + 1e-8));
    const auto& c = result.snapshots[i].u.coefficients();
    rec.resolved.push_back(spectral_tail_fraction(c, g) <= result.params.tail_threshold);
  }
  return rec;
}

KdvComparison kdv_compare(double epsilon, const Field& phi, const CompareParams& params) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw std::invalid_argument("epsilon must lie in (0, 1]");
  if (params.samples < 5) throw std::invalid_argument("kdv_compare needs at least five samples");
  KdvComparison out;
  out.epsilon = epsilon;
  const double h2 = norm(phi, NormKind::H(2));
  out.horizon = params.horizon.value_or(h2 > 0.0 ? params.horizon_coefficient / (epsilon * h2) : 1.0);
  RunParams rp;
  rp.final_time = out.horizon;
  rp.cfl = params.cfl;
  rp.snapshot_interval = out.horizon / static_cast<double>(params.samples);
  const RunResult whitham = run(ModelSpec::make(Family::whitham_rescaled, 0.0, epsilon), phi, rp);
  const RunResult kdv = run(ModelSpec::make(Family::kdv, 0.0, epsilon), phi, rp);
  const double end = std::min(whitham.snapshots.back().t, kdv.snapshots.back().t);
  if (whitham.termination != Termination::reached_final_time ||
      kdv.termination != Termination::reached_final_time) {
    out.truncated = true;
    out.note = "a run stopped before the horizon (whitham: " + std::string(to_string(whitham.termination)) +
               ", kdv: " + std::string(to_string(kdv.termination)) + ")";
  }
  for (std::size_t j = 1; j <= params.samples; ++j) {
    const double t = out.horizon * static_cast<double>(j) / static_cast<double>(params.samples);
    if (t > end * (1.0 + 1e-12)) break;
    const Field diff = field_at(whitham, std::min(t, end)) - field_at(kdv, std::min(t, end));
    out.t.push_back(t);
    out.err_l2.push_back(norm(diff, NormKind::L2()));
    out.err_h1.push_back(norm(diff, NormKind::H(1)));
  }
  double sxx = 0.0, sl2 = 0.0, sh1 = 0.0;
  std::vector<double> lt, lr;
  const double e2 = epsilon * epsilon;
  for (std::size_t i = 0; i < out.t.size(); ++i) {
    if (out.t[i] < 0.2 * out.horizon) continue;
    const double x = e2 * out.t[i];
    sxx += x * x;
    sl2 += x * out.err_l2[i];
    sh1 += x * out.err_h1[i];
    if (out.err_l2[i] > 0.0) {
      lt.push_back(std::log(out.t[i]));
      lr.push_back(std::log(out.err_l2[i] / x));
    }
  }
  if (sxx > 0.0) {
    out.m_l2 = sl2 / sxx;
    out.m_h1 = sh1 / sxx;
  }
  if (lt.size() >= 2) out.log_slope = fit_line(lt, lr).slope;
  return out;
}

}  // namespace wavebreak
