#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "wavebreak/hypotheses.hpp"
#include "wavebreak/numerics.hpp"
#include "wavebreak/profiles.hpp"

using namespace wavebreak;

namespace {

constexpr double pi = std::numbers::pi;

Field odd_ramp(const Grid& g, double a = 1.0, double w = 1.0) {
  ProfileSpec spec;
  spec.family = "odd_ramp";
  spec.amplitude = a;
  spec.width = w;
  return make_profile(g, spec);
}

HurConstants placeholder_hur(double eps) {
  HurConstants h;
  h.l0 = 1.0;
  h.l_inf = 0.2;
  h.epsilon = eps;
  return h;
}

}  // namespace

TEST(Norms, ZeroSineAndGaussian) {
  const NormBundle z = compute_norms(Field::zero(Grid::make(64, pi)));
  EXPECT_EQ(z.l2, 0.0);
  EXPECT_EQ(z.h3, 0.0);
  EXPECT_EQ(z.inf_d1, 0.0);
  const Grid g = Grid::make(256, pi);
  const NormBundle s = compute_norms(Field::sample(g, [](double x) { return -std::sin(x); }));
  EXPECT_NEAR(s.inf_d1, -1.0, 1e-8);
  EXPECT_NEAR(s.argmin_d1, 0.0, 1e-3);
  const Grid wide = Grid::make(1024, 20.0);
  const double a = 1.7;
  const NormBundle gb = compute_norms(Field::sample(wide, [&](double x) { return a * std::exp(-x * x); }));
  EXPECT_NEAR(gb.l2, a * std::pow(pi / 2.0, 0.25), 1e-10);
}

TEST(Norms, DecayTolerance) {
  const Grid g = Grid::make(256, pi);
  const Field s = Field::sample(g, [](double x) { return std::sin(x); });
  EXPECT_THROW(compute_norms(s, 1e-6), std::invalid_argument);
  EXPECT_NO_THROW(compute_norms(odd_ramp(Grid::make(1024, 12.0)), 1e-6));
}

TEST(Norms, ScaleWithAmplitude) {
  const Grid g = Grid::make(512, 10.0);
  const NormBundle a = compute_norms(odd_ramp(g));
  const NormBundle b = compute_norms(3.0 * odd_ramp(g));
  EXPECT_NEAR(b.h2, 3.0 * a.h2, 1e-12 * b.h2);
  EXPECT_NEAR(b.inf_d1, 3.0 * a.inf_d1, 1e-12);
  EXPECT_NEAR(a.scaled(3.0).linf_d2, b.linf_d2, 1e-12 * b.linf_d2);
}

TEST(Constants, AnalyticValues) {
  const ConstantSet c = estimate_constants();
  EXPECT_DOUBLE_EQ(c.c_sob, 1.0);
  EXPECT_DOUBLE_EQ(c.c_mor, 1.0);
  EXPECT_NEAR(c.c_gn, 3.0 * std::pow(24.0, -1.0 / 3.0), 1e-15);
  EXPECT_FALSE(c.family.has_value());
}

TEST(Constants, FamilyScanStaysBelowAdmissibleValues) {
  const ConstantSet c = estimate_constants(ConstantMode::numeric_refine);
  ASSERT_TRUE(c.family.has_value());
  const FamilyMaxima& f = *c.family;
  EXPECT_GE(f.members_sob, 200u);
  EXPECT_LE(f.c_sob, c.c_sob);
  EXPECT_NEAR(f.c_sob, std::sqrt(0.5), 0.02);
  EXPECT_LT(f.c_mor, 1.0);
  EXPECT_GT(f.c_mor, 0.9);
  EXPECT_LE(f.c_gn, c.c_gn);
}

TEST(Constants, HolderSeminormBoundedByDerivative) {
  const Grid g = Grid::make(512, 10.0);
  const Field f = odd_ramp(g);
  const double holder = holder_half_bruteforce(f, 2);
  EXPECT_GT(holder, 0.0);
  EXPECT_LE(holder, norm(derivative(f, 1), NormKind::L2()));
}

TEST(Theorems, ZeroDatumFailsFirstCondition) {
  const Grid g = Grid::make(256, 10.0);
  TheoremInputs in;
  const HypothesisReport r = check_theorem(in, Field::zero(g), estimate_constants());
  EXPECT_FALSE(r.pass);
  ASSERT_FALSE(r.conditions.empty());
  EXPECT_EQ(r.conditions.front().name, "t1c1");
  EXPECT_EQ(r.conditions.front().lhs, 0.0);
  EXPECT_EQ(r.conditions.front().rhs, 0.0);
  EXPECT_FALSE(r.conditions.front().pass());
}

TEST(Theorems, DeltaRanges) {
  EXPECT_NEAR(delta_range(Theorem::burgers_hilbert).second, 1.0 - std::sqrt(3.0) / 2.0, 1e-15);
  EXPECT_NEAR(delta_range(Theorem::whitham).second, 1.0 - 2.0 * std::sqrt(2.0) / 3.0, 1e-15);
  const Grid g = Grid::make(256, 10.0);
  TheoremInputs in;
  in.delta = 0.2;
  EXPECT_THROW(check_theorem(in, odd_ramp(g), estimate_constants()), std::invalid_argument);
}

TEST(Theorems, RescaledPrecondition) {
  const Grid g = Grid::make(256, 10.0);
  TheoremInputs in;
  in.theorem = Theorem::whitham_rescaled;
  in.epsilon = 0.1;
  in.delta = 0.04;
  EXPECT_NO_THROW(check_theorem(in, odd_ramp(g), estimate_constants(), placeholder_hur(0.1)));
  in.delta = 0.06;
  EXPECT_THROW(check_theorem(in, odd_ramp(g), estimate_constants(), placeholder_hur(0.1)), std::invalid_argument);
  in.delta = 0.04;
  EXPECT_THROW(check_theorem(in, odd_ramp(g), estimate_constants()), std::invalid_argument);
  EXPECT_THROW(check_theorem(in, odd_ramp(g), estimate_constants(), placeholder_hur(0.2)), std::invalid_argument);
}

TEST(Theorems, MarginsAreLhsMinusRhs) {
  const Grid g = Grid::make(512, 10.0);
  const HypothesisReport r = check_theorem(TheoremInputs{}, 100.0 * odd_ramp(g), estimate_constants());
  for (const auto& c : r.conditions) EXPECT_DOUBLE_EQ(c.margin(), c.lhs - c.rhs);
  EXPECT_DOUBLE_EQ(r.c0, 2.0 * r.norms.linf);
  EXPECT_DOUBLE_EQ(r.c1, 2.0 * r.norms.linf_d1);
}

TEST(FindLambda, ScalingAndDominance) {
  const Grid g = Grid::make(1024, 10.0);
  const Field phi0 = odd_ramp(g);
  const ConstantSet k = estimate_constants();
  const LambdaSearch ls = find_lambda(phi0, TheoremInputs{}, k);
  ASSERT_TRUE(ls.report.pass);
  ASSERT_TRUE(ls.report.bracket.has_value());
  EXPECT_TRUE(ls.monotone);
  const HypothesisReport twice = check_theorem(TheoremInputs{}, (2.0 * ls.lambda) * phi0, k);
  EXPECT_TRUE(twice.pass);
  ASSERT_TRUE(twice.bracket.has_value());
  EXPECT_NEAR(ls.report.bracket->first / twice.bracket->first, 2.0, 1e-9);
  EXPECT_NEAR(ls.report.bracket->second / twice.bracket->second, 2.0, 1e-9);
  // Margin of the first condition grows with lambda beyond the threshold.
  double prev = -1.0;
  for (double s : {1.0, 2.0, 4.0, 8.0}) {
    const double m = check_theorem(TheoremInputs{}, (s * ls.lambda) * phi0, k).conditions.front().margin();
    EXPECT_GT(m, prev);
    prev = m;
  }
  EXPECT_FALSE(check_theorem(TheoremInputs{}, (0.5 * ls.lambda) * phi0, k).pass);
}

TEST(FindLambda, NeedsNegativeSlope) {
  const Grid g = Grid::make(256, 10.0);
  EXPECT_THROW(find_lambda(Field::zero(g), TheoremInputs{}, estimate_constants()), std::invalid_argument);
}

TEST(HalfLine, FunctionalValueAndScaling) {
  const Grid g = Grid::make(2048, 48.0);
  const Field phi = odd_ramp(g, 1.0, 3.0);
  const B1Result b = check_b1(phi);
  // Independent oracle: Gauss-Legendre on the closed-form profile.
  const double f0 = gauss_legendre(
      [](double x) { return (x / 3.0) * std::exp(0.5 * (1.0 - x * x / 9.0)) * std::exp(-x); }, 0.0, 40.0, 400);
  EXPECT_NEAR(b.f0, f0, 1e-10);
  const B1Result b4 = check_b1(4.0 * phi);
  EXPECT_NEAR(b4.f0, 4.0 * b.f0, 1e-12);
  EXPECT_NEAR(b4.rhs, 2.0 * b.rhs, 1e-12);
  EXPECT_FALSE(check_b1(Field::zero(g)).pass);
  EXPECT_EQ(check_b1(Field::zero(g)).f0, 0.0);
  // Pass is monotone in amplitude.
  bool passed = false;
  for (double a = 1.0; a < 1e5; a *= 1.5) {
    const bool p = check_b1(a * phi).pass;
    EXPECT_TRUE(p || !passed);
    passed = passed || p;
  }
  EXPECT_TRUE(passed);
  EXPECT_THROW(check_b1(odd_ramp(Grid::make(256, 10.0))), std::invalid_argument);
}
