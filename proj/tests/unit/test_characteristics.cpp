#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "wavebreak/characteristics.hpp"
#include "wavebreak/profiles.hpp"

using namespace wavebreak;

namespace {

constexpr double pi = std::numbers::pi;

RunResult short_run(const ModelSpec& m, const Field& phi, double final_time, double interval) {
  RunParams p;
  p.final_time = final_time;
  p.snapshot_interval = interval;
  return run(m, phi, p);
}

}  // namespace

TEST(Advect, ZeroField) {
  const Grid g = Grid::make(64, pi);
  const RunResult r = short_run(ModelSpec::make(Family::burgers_hilbert), Field::zero(g), 1.0, 0.02);
  const Advection adv = advect(r, {-1.0, 0.0, 2.0});
  ASSERT_EQ(adv.trajectories.size(), 3u);
  for (const auto& tr : adv.trajectories) {
    for (std::size_t i = 0; i < tr.t.size(); ++i) {
      EXPECT_EQ(tr.x[i], tr.seed);
      EXPECT_EQ(tr.v0[i], 0.0);
      EXPECT_EQ(tr.v1[i], 0.0);
    }
    const RiccatiResidual res = verify_riccati(tr, r.model);
    for (double v : res.r1) EXPECT_EQ(v, 0.0);
    for (double v : res.r0) EXPECT_EQ(v, 0.0);
  }
}

TEST(Advect, ConstantFieldTranslates) {
  const Grid g = Grid::make(64, pi);
  const double c0 = 0.3, eps = 0.5;
  const RunResult r = short_run(ModelSpec::make(Family::burgers, 0.0, eps),
                                Field::sample(g, [&](double) { return c0; }), 1.0, 0.05);
  const Advection adv = advect(r, {0.25});
  const auto& tr = adv.trajectories.front();
  for (std::size_t i = 0; i < tr.t.size(); ++i) EXPECT_NEAR(tr.x[i], 0.25 + eps * c0 * tr.t[i], 1e-12);
}

TEST(Advect, BurgersCharacteristicThroughSteepestPoint) {
  // phi = -sin x: phi'(0) = -1, so v1 = -1/(1 - t) along the path from 0.
  const Grid g = Grid::make(1024, pi);
  const RunResult r = short_run(ModelSpec::make(Family::burgers), Field::sample(g, [](double x) { return -std::sin(x); }),
                                0.8, 0.01);
  ASSERT_EQ(r.termination, Termination::reached_final_time);
  const Advection adv = advect(r, {0.0, 1.0});
  ASSERT_TRUE(adv.cadence_ok);
  const auto& tr = adv.trajectories.front();
  for (std::size_t i = 0; i < tr.t.size(); ++i) {
    const double exact = -1.0 / (1.0 - tr.t[i]);
    EXPECT_NEAR(tr.v1[i], exact, 5e-3 * std::abs(exact));
    EXPECT_NEAR(tr.r[i], 1.0 - tr.t[i], 5e-3);
    EXPECT_EQ(tr.k0[i], 0.0);
    EXPECT_EQ(tr.k1[i], 0.0);
  }
  const RiccatiResidual res = verify_riccati(tr, r.model, 0.8);
  EXPECT_LT(res.max_rel1, 1e-3);
  // Labels are carried unchanged along Burgers characteristics.
  const auto& far = adv.trajectories.back();
  for (double v : far.v0) EXPECT_NEAR(v, far.v0.front(), 1e-6);
  // m(t) is tracked by the seed at the steepest point.
  for (std::size_t i = 0; i < adv.t.size(); ++i) EXPECT_NEAR(adv.m[i], tr.v1[i], 1e-3 * std::abs(tr.v1[i]));
}

TEST(Advect, RejectsSeedsOutsideDomain) {
  const Grid g = Grid::make(64, pi);
  const RunResult r = short_run(ModelSpec::make(Family::burgers), Field::zero(g), 0.1, 0.01);
  EXPECT_THROW(advect(r, {4.0}), std::invalid_argument);
}

TEST(Forcings, BurgersAndHilbert) {
  const Grid g = Grid::make(64, pi);
  const Field s = Field::sample(g, [](double x) { return std::sin(x); });
  const Forcings b = eval_forcings(ModelSpec::make(Family::burgers), s, 0.7);
  EXPECT_EQ(b.k0, 0.0);
  EXPECT_EQ(b.k1, 0.0);
  const Forcings h = eval_forcings(ModelSpec::make(Family::burgers_hilbert), s, 0.0);
  EXPECT_NEAR(h.k0, 1.0, 1e-14);  // -(H sin)(0) = cos 0
  EXPECT_NEAR(h.k1, 0.0, 1e-14);  // -(H cos)(0) = -sin 0
}

TEST(Forcings, WhithamMatchesDirectMultiplier) {
  const Grid g = Grid::make(128, 6.0);
  const Field u = Field::sample(g, [](double x) { return std::exp(-x * x) * std::sin(2.0 * x); });
  const ModelSpec w = ModelSpec::make(Family::whitham);
  const Symbol p = [&](double xi) { return w.symbol(xi); };
  const Field d1 = apply_multiplier(derivative(u, 1), p);
  const Field d0 = apply_multiplier(u, p);
  for (double x : {-1.3, 0.0, 0.4, 2.2}) {
    const Forcings f = eval_forcings(w, u, x);
    EXPECT_NEAR(f.k1, -d1(x), 1e-10);
    EXPECT_NEAR(f.k0, -d0(x), 1e-10);
  }
}

TEST(Seeds, DefaultSeedSet) {
  const Grid g = Grid::make(512, 10.0);
  ProfileSpec spec;
  spec.family = "odd_ramp";
  const Field phi = make_profile(g, spec);
  const auto seeds = default_seeds(phi, 0.1, 1.0);
  EXPECT_GE(seeds.size(), 1u + 32u + 2u);
  bool has_argmin = false;
  for (double s : seeds) {
    EXPECT_GE(s, -10.0);
    EXPECT_LT(s, 10.0);
    has_argmin = has_argmin || std::abs(s) < 1e-6;
  }
  EXPECT_TRUE(has_argmin);
}

TEST(Report, SmallDataViolatesSmallness) {
  // Far below the certified amplitude the dispersive forcing dominates m^2.
  const Grid g = Grid::make(512, 10.0);
  ProfileSpec spec;
  spec.family = "odd_ramp";
  const Field phi = make_profile(g, spec);
  const RunResult r = short_run(ModelSpec::make(Family::burgers_hilbert), phi, 0.5, 0.01);
  const Advection adv = advect(r, default_seeds(phi, 0.1, 1.0));
  EXPECT_NEAR(adv.m.front(), r.m0, 1e-6 * std::abs(r.m0));
  const CharacteristicReport rep = verify_smallness_and_brackets(r, adv, 0.1, 1.0);
  EXPECT_FALSE(rep.all_pass());
  bool found = false;
  for (const auto& c : rep.checks) {
    if (c.name.find("smallness") != std::string::npos) {
      found = true;
      EXPECT_FALSE(c.pass);
      EXPECT_GE(c.at_time, 0.0);
    }
  }
  EXPECT_TRUE(found);
}
