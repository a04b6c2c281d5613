#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "wavebreak/breaking.hpp"
#include "wavebreak/evolve.hpp"
#include "wavebreak/profiles.hpp"

using namespace wavebreak;

namespace {

constexpr double pi = std::numbers::pi;

Field neg_sine(const Grid& g) {
  return Field::sample(g, [](double x) { return -std::sin(x); });
}

double l2_of(const std::vector<Complex>& c, const Grid& g) {
  return norm(Field::from_coefficients(g, c), NormKind::L2());
}

}  // namespace

TEST(Step, ConstantsAreExactBurgersSolutions) {
  const Grid g = Grid::make(64, pi);
  const SimState s{0.0, Field::sample(g, [](double) { return 0.3; })};
  const SimState next = step(s, ModelSpec::make(Family::burgers), 0.5);
  ASSERT_FALSE(next.aborted);
  EXPECT_NEAR(next.t, 0.5, 1e-15);
  for (double v : next.u.values()) EXPECT_NEAR(v, 0.3, 1e-14);
}

TEST(Step, KdvLinearPropagatorIsExact) {
  const Grid g = Grid::make(64, pi);
  const ModelSpec kdv = ModelSpec::make(Family::kdv, 0.0, 1.0);
  Stepper st(kdv, g, false);
  const Field u = Field::sample(g, [](double x) { return std::exp(std::cos(x)); });
  std::vector<Complex> c(u.coefficients().begin(), u.coefficients().end());
  const double dt = 0.01;
  ASSERT_TRUE(st.advance(c, dt));
  for (std::size_t k = 0; k < g.dealias_cutoff(); ++k) {
    const double xi = g.wavenumber(k);
    const Complex expected = u.coefficients()[k] * std::exp(dt * Complex(0.0, -xi + xi * xi * xi / 6.0));
    EXPECT_NEAR(std::abs(c[k] - expected), 0.0, 1e-13) << "k = " << k;
  }
  EXPECT_NEAR(l2_of(c, g), norm(dealiased(u), NormKind::L2()), 1e-12);
}

TEST(Step, BurgersHilbertConservesL2AndIsFourthOrder) {
  const Grid g = Grid::make(128, pi);
  const ModelSpec bh = ModelSpec::make(Family::burgers_hilbert);
  const Field u = Field::sample(g, [](double x) { return std::sin(x); });
  const SimState s{0.0, u};
  const SimState one = step(s, bh, 1e-3);
  EXPECT_NEAR(norm(one.u, NormKind::L2()), norm(u, NormKind::L2()), 1e-10);
  // Richardson: one step against two half steps differs at O(dt^5).
  auto distance = [&](double dt) {
    const SimState a = step(s, bh, dt);
    const SimState b = step(step(s, bh, dt / 2), bh, dt / 2);
    return norm(a.u - b.u, NormKind::L2());
  };
  EXPECT_LT(distance(1e-3), 1e-12);
  EXPECT_GT(std::log2(distance(0.04) / distance(0.02)), 4.5);
}

TEST(Step, TimeConvergenceOrder) {
  const Grid g = Grid::make(128, pi);
  const ModelSpec m = ModelSpec::make(Family::fkdv, -0.5);
  const Field u0 = Field::sample(g, [](double x) { return 0.5 * std::sin(x) + 0.2 * std::cos(2.0 * x); });
  auto solve = [&](int steps) {
    Stepper st(m, g);
    std::vector<Complex> c(u0.coefficients().begin(), u0.coefficients().end());
    for (int i = 0; i < steps; ++i) st.advance(c, 0.5 / steps);
    return Field::from_coefficients(g, c);
  };
  const Field ref = solve(800);
  const double e1 = norm(solve(25) - ref, NormKind::L2());
  const double e2 = norm(solve(50) - ref, NormKind::L2());
  EXPECT_GE(std::log2(e1 / e2), 3.5);
}

TEST(Run, BurgersBreakingTime) {
  const Grid g = Grid::make(1024, pi);
  for (double eps : {1.0, 0.5}) {
    RunParams p;
    p.final_time = 3.0;
    const RunResult r = run(ModelSpec::make(Family::burgers, 0.0, eps), neg_sine(g), p);
    ASSERT_EQ(r.termination, Termination::breaking_detected) << r.message;
    ASSERT_TRUE(r.estimate.has_value());
    EXPECT_NEAR(r.estimate->t_est, 1.0 / eps, 0.01 / eps);
    EXPECT_LE(r.estimate->sup_u_at_detection, p.sup_factor * r.phi_sup);
    EXPECT_GE(std::abs(r.series.back().m), p.m_stop * std::abs(r.m0));
    // Maximum principle while the front is resolved.
    for (const auto& s : r.series) {
      if (s.tail > 1e-10) break;
      EXPECT_LE(s.linf_u, 1.0 + 1e-6) << "t = " << s.t;
    }
  }
}

TEST(Run, ZeroDatumStaysZero) {
  const Grid g = Grid::make(64, pi);
  RunParams p;
  p.final_time = 1.0;
  const RunResult r = run(ModelSpec::make(Family::burgers), Field::zero(g), p);
  EXPECT_EQ(r.termination, Termination::reached_final_time);
  EXPECT_NEAR(r.series.back().t, 1.0, 1e-12);
  for (const auto& s : r.series) {
    EXPECT_EQ(s.m, 0.0);
    EXPECT_EQ(s.l2, 0.0);
  }
}

TEST(Run, WhithamSmallBumpConservesL2) {
  const Grid g = Grid::make(256, 32.0);
  ProfileSpec spec;
  spec.family = "sech_squared";
  spec.amplitude = 0.01;
  spec.width = 2.0;
  RunParams p;
  p.final_time = 10.0;
  p.store_snapshots = false;
  const RunResult r = run(ModelSpec::make(Family::whitham), make_profile(g, spec), p);
  EXPECT_EQ(r.termination, Termination::reached_final_time);
  const double l2 = r.series.front().l2;
  for (const auto& s : r.series) EXPECT_NEAR(s.l2, l2, 1e-8 * l2);
}

TEST(Run, SnapshotsInterpolateInTime) {
  const Grid g = Grid::make(128, pi);
  RunParams p;
  p.final_time = 0.5;
  p.snapshot_interval = 0.05;
  const RunResult r = run(ModelSpec::make(Family::burgers_hilbert), neg_sine(g), p);
  ASSERT_GE(r.snapshots.size(), 10u);
  const auto& s = r.snapshots[4];
  const Field f = field_at(r, s.t);
  EXPECT_LT(norm(f - s.u, NormKind::Linf()), 1e-13);
  const double mid = 0.5 * (r.snapshots[4].t + r.snapshots[5].t);
  const Field fm = field_at(r, mid);
  EXPECT_LT(norm(fm - 0.5 * (r.snapshots[4].u + r.snapshots[5].u), NormKind::Linf()), 0.05);
  EXPECT_NEAR(boundary_decay(neg_sine(g)), 1.0, 1e-12);
}

TEST(DetectBreaking, ExactRiccatiData) {
  std::vector<double> t, m;
  for (int i = 0; i <= 900; ++i) {
    t.push_back(i * 1e-3);
    m.push_back(-1.0 / (1.0 - t.back()));
  }
  const BreakingEstimate e = detect_breaking(t, m);
  EXPECT_NEAR(e.t_est, 1.0, 1e-6);
  EXPECT_LT(e.ci_halfwidth, 1e-6);
  for (double& v : t) v += 5.0;
  EXPECT_NEAR(detect_breaking(t, m).t_est, 6.0, 1e-6);
}

TEST(DetectBreaking, NoTrend) {
  std::vector<double> t, m;
  for (int i = 0; i <= 100; ++i) {
    t.push_back(i * 1e-2);
    m.push_back(-1.0 + 0.1 * t.back());
  }
  EXPECT_THROW(detect_breaking(t, m), NoBreakingEstimate);
  const std::vector<double> few_t = {0.0, 0.1}, few_m = {-1.0, -2.0};
  EXPECT_THROW(detect_breaking(few_t, few_m), NoBreakingEstimate);
}
