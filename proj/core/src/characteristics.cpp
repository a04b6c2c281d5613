#include "wavebreak/characteristics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "wavebreak/numerics.hpp"

namespace wavebreak {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Coefficient arrays of u, u_x, -D[u], -D[u_x] for one time level.
struct Level {
  std::vector<Complex> u, ux, k0, k1;
};

struct Tables {
  std::vector<Complex> ik;
  std::vector<Complex> minus_p;

  Tables(const ModelSpec& model, const Grid& grid) {
    const std::size_t m = grid.num_modes();
    ik.resize(m);
    minus_p.resize(m);
    const Multiplier mult = model.multiplier(grid);
    const auto p = mult.table();
    for (std::size_t k = 0; k < m; ++k) {
      ik[k] = k == grid.nyquist() ? Complex{} : Complex(0.0, grid.wavenumber(k));
      minus_p[k] = -p[k];
    }
  }

  Level level(std::span<const Complex> c) const {
    Level l;
    l.u.assign(c.begin(), c.end());
    l.ux.resize(c.size());
    l.k0.resize(c.size());
    l.k1.resize(c.size());
    for (std::size_t k = 0; k < c.size(); ++k) {
      l.ux[k] = ik[k] * c[k];
      l.k0[k] = minus_p[k] * c[k];
      l.k1[k] = minus_p[k] * l.ux[k];
    }
    return l;
  }
};

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

void record(Trajectory& tr, double t, double x, const Level& l, const Grid& grid, double m0) {
  const auto ph = fourier_phases(grid, x);
  tr.t.push_back(t);
  tr.x.push_back(x);
  tr.v0.push_back(evaluate_with_phases(l.u, ph));
  const double v1 = evaluate_with_phases(l.ux, ph);
  tr.v1.push_back(v1);
  tr.k0.push_back(evaluate_with_phases(l.k0, ph));
  tr.k1.push_back(evaluate_with_phases(l.k1, ph));
  tr.r.push_back(m0 != 0.0 && v1 != 0.0 && (v1 < 0.0) == (m0 < 0.0) ? m0 / v1 : kNaN);
}

}  // namespace

Forcings eval_forcings(const ModelSpec& model, const Field& u, double x) {
  const Tables tables(model, u.grid());
  const Level l = tables.level(u.coefficients());
  const auto ph = fourier_phases(u.grid(), x);
  return {evaluate_with_phases(l.k0, ph), evaluate_with_phases(l.k1, ph)};
}

Advection advect(const RunResult& result, const std::vector<double>& seeds,
                 const AdvectOptions& options) {
  const Grid& grid = result.grid;
  for (double s : seeds) {
    if (!(s >= -grid.half_length() && s < grid.half_length())) {
      throw std::invalid_argument("seed " + std::to_string(s) + " outside the domain");
    }
  }
  const auto& snaps = result.snapshots;
  if (snaps.empty()) throw std::invalid_argument("advect needs stored snapshots");
  const double t_max = options.t_max < 0.0 ? snaps.back().t : options.t_max;
  const double c = result.model.transport();
  const Tables tables(result.model, grid);

  Advection adv;
  adv.trajectories.resize(seeds.size());
  for (std::size_t s = 0; s < seeds.size(); ++s) adv.trajectories[s].seed = seeds[s];
  std::vector<double> xs = seeds;

  auto grid_min = [&](const Field& u) { return refined_minimum(derivative(u, 1)).value; };

  Level current = tables.level(snaps[0].u.coefficients());
  const double m_grid0 = grid_min(snaps[0].u);
  double m0 = m_grid0;
  for (double x : xs) m0 = std::min(m0, interpolate(derivative(snaps[0].u, 1), x));
  adv.t.push_back(snaps[0].t);
  adv.m.push_back(m0);
  for (std::size_t s = 0; s < xs.size(); ++s) record(adv.trajectories[s], snaps[0].t, xs[s], current, grid, m0);

  std::vector<Complex> mid;
  for (std::size_t i = 0; i + 1 < snaps.size() && snaps[i + 1].t <= t_max * (1.0 + 1e-14); ++i) {
    const auto& a = snaps[i];
    const auto& b = snaps[i + 1];
    const double scale = max_abs(a.u.values());
    double change = 0.0;
    for (std::size_t j = 0; j < grid.size(); ++j) {
      change = std::max(change, std::abs(b.u.values()[j] - a.u.values()[j]));
    }
    const double rel = scale > 0.0 ? change / scale : 0.0;
    adv.max_relative_change = std::max(adv.max_relative_change, rel);
    if (rel > options.cadence_tolerance) {
      adv.cadence_ok = false;
      adv.cadence_violation = a.t;
      break;
    }
    const double h = b.t - a.t;
    coefficients_at(result, a.t + 0.5 * h, mid);
    const Level next = tables.level(b.u.coefficients());
    auto speed = [&](double x, std::span<const Complex> coeffs) {
      return c * evaluate_with_phases(coeffs, fourier_phases(grid, x));
    };
    for (double& x : xs) {
      const double k1 = speed(x, current.u);
      const double k2 = speed(x + 0.5 * h * k1, mid);
      const double k3 = speed(x + 0.5 * h * k2, mid);
      const double k4 = speed(x + h * k3, next.u);
      x = grid.wrap(x + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
    }
    current = next;
    double m = grid_min(b.u);
    std::vector<double> v1(xs.size());
    for (std::size_t s = 0; s < xs.size(); ++s) {
      v1[s] = evaluate_with_phases(current.ux, fourier_phases(grid, xs[s]));
      m = std::min(m, v1[s]);
    }
    adv.t.push_back(b.t);
    adv.m.push_back(m);
    for (std::size_t s = 0; s < xs.size(); ++s) record(adv.trajectories[s], b.t, xs[s], current, grid, m0);
  }
  return adv;
}

std::vector<double> default_seeds(const Field& phi, double delta, double eps, std::size_t uniform,
                                  std::size_t cluster) {
  const Grid& grid = phi.grid();
  const Field dphi = derivative(phi, 1);
  const Extremum lowest = refined_minimum(dphi);
  std::vector<double> seeds{lowest.x};
  for (std::size_t j = 0; j < uniform; ++j) {
    seeds.push_back(-grid.half_length() +
                    grid.period() * (static_cast<double>(j) + 0.5) / static_cast<double>(uniform));
  }
  if (lowest.value < 0.0 && delta > 0.0) {
    const double threshold = (1.0 - delta / eps) * lowest.value;
    const double step = grid.spacing() / 4.0;
    std::vector<double> edges;
    for (double dir : {1.0, -1.0}) {
      double inside = lowest.x;
      double outside = inside;
      bool found = false;
      for (double d = step; d < grid.half_length(); d += step) {
        const double x = lowest.x + dir * d;
        if (interpolate(dphi, x) > threshold) {
          outside = x;
          found = true;
          break;
        }
        inside = x;
      }
      if (!found) continue;
      for (int it = 0; it < 60 && std::abs(outside - inside) > 1e-12 * grid.half_length(); ++it) {
        const double mid = 0.5 * (inside + outside);
        (interpolate(dphi, mid) > threshold ? outside : inside) = mid;
      }
      edges.push_back(inside);
    }
    for (double edge : edges) seeds.push_back(grid.wrap(edge));
    for (double edge : edges) {
      for (std::size_t j = 1; j <= cluster; ++j) {
        const double f = static_cast<double>(j) / static_cast<double>(4 * cluster);
        seeds.push_back(grid.wrap(lowest.x + f * (edge - lowest.x)));
      }
    }
  }
  return seeds;
}

RiccatiResidual verify_riccati(const Trajectory& traj, const ModelSpec& model, double t_max,
                               double floor_fraction, double absolute_floor) {
  RiccatiResidual res;
  std::size_t n = traj.t.size();
  if (t_max >= 0.0) {
    n = static_cast<std::size_t>(std::upper_bound(traj.t.begin(), traj.t.end(), t_max) - traj.t.begin());
  }
  if (n < 5) throw std::invalid_argument("verify_riccati needs at least five samples");
  const std::span<const double> t(traj.t.data(), n);
  const auto dv1 = differentiate(t, std::span<const double>(traj.v1.data(), n));
  const auto dv0 = differentiate(t, std::span<const double>(traj.v0.data(), n));
  const double c = model.transport();
  double scale_max = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    scale_max = std::max({scale_max, c * traj.v1[i] * traj.v1[i], std::abs(traj.k1[i])});
  }
  double scale0 = 0.0;
  for (std::size_t i = 0; i < n; ++i) scale0 = std::max(scale0, std::abs(traj.k0[i]));
  const double floor1 = std::max({floor_fraction * scale_max, absolute_floor, std::numeric_limits<double>::min()});
  const double floor0 = std::max(floor_fraction * scale0, std::numeric_limits<double>::min());
  double sum2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r1 = dv1[i] + c * traj.v1[i] * traj.v1[i] + traj.k1[i];
    const double r0 = dv0[i] + traj.k0[i];
    res.t.push_back(t[i]);
    res.r1.push_back(r1);
    res.r0.push_back(r0);
    const double rel1 =
        std::abs(r1) / std::max({c * traj.v1[i] * traj.v1[i], std::abs(traj.k1[i]), floor1});
    const double rel0 = std::abs(r0) / std::max(std::abs(traj.k0[i]), floor0);
    if (scale_max > 0.0) {
      res.max_rel1 = std::max(res.max_rel1, rel1);
      sum2 += rel1 * rel1;
    }
    if (scale0 > 0.0) res.max_rel0 = std::max(res.max_rel0, rel0);
  }
  res.rms_rel1 = std::sqrt(sum2 / static_cast<double>(n));
  return res;
}

bool CharacteristicReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckOutcome& c) { return c.pass; });
}

namespace {

// int q^{-s} dt over one interval with q linear in t between qa and qb. q is
// close to affine in t near breaking, where the trapezoid rule would
// overestimate the convex integrand.
double power_integral(double qa, double qb, double h, double s) {
  const double dq = qb - qa;
  if (std::abs(dq) <= 1e-9 * std::abs(qa)) return h * std::pow(0.5 * (qa + qb), -s);
  if (s == 1.0) return h * (std::log(qb) - std::log(qa)) / dq;
  return h * (std::pow(qb, 1.0 - s) - std::pow(qa, 1.0 - s)) / ((1.0 - s) * dq);
}

void note_margin(CheckOutcome& c, double margin, double t, double seed, bool pass) {
  if (c.evaluated == 0 || margin < c.worst_margin) {
    c.worst_margin = margin;
    c.at_time = t;
    c.at_seed = seed;
  }
  ++c.evaluated;
  if (!pass) c.pass = false;
}

}  // namespace

CharacteristicReport verify_smallness_and_brackets(const RunResult& result, const Advection& adv,
                                                   double delta, double eps,
                                                   std::optional<BracketSpec> bracket,
                                                   double cutoff_factor, double resolution_tail) {
  if (!(delta > 0.0) || !(eps > 0.0) || !(delta / eps < 1.0)) {
    throw std::invalid_argument("verify_smallness_and_brackets needs 0 < delta/eps < 1");
  }
  CharacteristicReport rep;
  rep.delta = delta;
  rep.epsilon = eps;
  rep.cutoff_factor = cutoff_factor;
  rep.resolution_tail = resolution_tail;
  if (adv.t.empty()) throw std::invalid_argument("empty advection record");
  const double m0 = adv.m.front();
  if (!(m0 < 0.0)) throw std::invalid_argument("m(0) must be negative");
  const double limit = cutoff_factor * result.params.m_stop * std::abs(m0);
  // The window also ends where the grid stops resolving the solution: past
  // that point the samples no longer describe a smooth solution.
  std::size_t n = 0;
  rep.window_end = "end of record";
  while (n < adv.t.size()) {
    if (std::abs(adv.m[n]) > limit) {
      rep.window_end = "slope cutoff";
      break;
    }
    if (spectral_tail_fraction(result.snapshots[n].u.coefficients(), result.grid) > resolution_tail) {
      rep.window_end = "resolution";
      break;
    }
    ++n;
  }
  if (n == 0) throw std::invalid_argument("initial datum is not resolved on the grid");
  rep.checked_until = adv.t[n - 1];
  rep.checked_m = adv.m[n - 1];
  const double ratio = 1.0 - delta / eps;
  const auto& trajs = adv.trajectories;

  CheckOutcome small;
  small.name = "smallness |K1| < delta^2 m^2";
  const Tables tables(result.model, result.grid);
  for (std::size_t i = 0; i < n; ++i) {
    const double bound = delta * delta * adv.m[i] * adv.m[i];
    for (const auto& tr : trajs) {
      const double r = std::abs(tr.k1[i]) / bound;
      note_margin(small, 1.0 - r, adv.t[i], tr.seed, r < 1.0);
    }
    const Level l = tables.level(result.snapshots[i].u.coefficients());
    const double sup = norm(Field::from_coefficients(result.grid, l.k1), NormKind::Linf());
    note_margin(small, 1.0 - sup / bound, adv.t[i], kNaN, sup < bound);
  }
  rep.checks.push_back(small);

  CheckOutcome nested;
  nested.name = "sigma sets nested in time";
  std::vector<bool> member_end(trajs.size(), false);
  for (std::size_t s = 0; s < trajs.size(); ++s) {
    bool prev = true;
    for (std::size_t i = 0; i < n; ++i) {
      const double thr = ratio * adv.m[i];
      const bool member = trajs[s].v1[i] <= thr;
      const bool entered = member && !prev && i > 0;
      note_margin(nested, entered ? -1.0 : 0.0, adv.t[i], trajs[s].seed, !entered);
      prev = member;
    }
    member_end[s] = prev;
  }
  rep.checks.push_back(nested);
  rep.sigma_seeds = static_cast<std::size_t>(std::count(member_end.begin(), member_end.end(), true));

  CheckOutcome qr;
  qr.name = "q <= r <= q/(1 - delta/eps)";
  CheckOutcome slope;
  slope.name = "dr/dt bracket";
  const double lo_rate = (eps + delta) * m0;
  const double hi_rate = (eps - delta) * m0;
  for (std::size_t s = 0; s < trajs.size(); ++s) {
    if (!member_end[s]) continue;
    const auto& tr = trajs[s];
    for (std::size_t i = 0; i < n; ++i) {
      const double q = m0 / adv.m[i];
      const double r = tr.r[i];
      const double margin = std::min(r - q, q / ratio - r);
      note_margin(qr, margin, adv.t[i], tr.seed, margin >= -1e-6);
    }
    if (n >= 5) {
      const auto dr = differentiate(std::span<const double>(adv.t.data(), n),
                                    std::span<const double>(tr.r.data(), n));
      for (std::size_t i = 0; i < n; ++i) {
        const double margin = std::min(dr[i] - lo_rate, hi_rate - dr[i]) / std::abs(eps * m0);
        note_margin(slope, margin, adv.t[i], tr.seed, margin >= -1e-4);
      }
    }
  }
  if (rep.sigma_seeds == 0) {
    qr.pass = slope.pass = false;
    qr.note = slope.note = "no seed remains in the Sigma set at the end of the checked window";
  }
  rep.checks.push_back(qr);
  rep.checks.push_back(slope);

  CheckOutcome qrange;
  qrange.name = "0 < q <= 1";
  for (std::size_t i = 0; i < n; ++i) {
    const double q = m0 / adv.m[i];
    const double margin = std::min(q, 1.0 - q);
    note_margin(qrange, margin, adv.t[i], kNaN, q > 0.0 && q <= 1.0 + 1e-9);
  }
  rep.checks.push_back(qrange);

  // Integral bounds on q^{-s}. The 1/eps factor comes from dr/dt scaling
  // with eps and is 1 for the unscaled models.
  for (double s : {1.0 / 3.0, 2.0, 1.0}) {
    std::ostringstream name;
    name << "integral bound on q^-" << (s == 1.0 / 3.0 ? "1/3" : (s == 2.0 ? "2" : "1"));
    CheckOutcome ib;
    ib.name = name.str();
    double integral = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double q = m0 / adv.m[i];
      if (i > 0) integral += power_integral(m0 / adv.m[i - 1], q, adv.t[i] - adv.t[i - 1], s);
      double rhs;
      if (s == 1.0) {
        rhs = -std::pow(ratio, -2.0) / m0 * (-std::log(ratio) - std::log(q));
      } else {
        rhs = -std::pow(ratio, -(s + 1.0)) / (1.0 - s) / m0 *
              (std::pow(ratio, s - 1.0) - std::pow(q, 1.0 - s));
      }
      rhs /= eps;
      const double margin = (rhs - integral) / std::max(std::abs(rhs), 1e-300);
      note_margin(ib, margin, adv.t[i], kNaN, integral <= rhs);
    }
    rep.checks.push_back(ib);
  }

  if (bracket) {
    CheckOutcome br;
    br.name = "breaking time inside bracket";
    if (result.estimate) {
      const double te = result.estimate->t_est;
      const double margin = std::min(te - bracket->lo, bracket->hi - te) / (bracket->hi - bracket->lo);
      note_margin(br, margin, te, kNaN, te > bracket->lo && te < bracket->hi);
    } else {
      br.pass = false;
      br.note = "run produced no breaking estimate";
    }
    rep.checks.push_back(br);
  }
  return rep;
}

}  // namespace wavebreak
