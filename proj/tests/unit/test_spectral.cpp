#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "wavebreak/field.hpp"
#include "wavebreak/grid.hpp"

using namespace wavebreak;

namespace {

constexpr double pi = std::numbers::pi;

Complex hilbert(double xi) { return Complex(0.0, xi > 0 ? -1.0 : (xi < 0 ? 1.0 : 0.0)); }

double max_diff(const Field& a, const std::function<double(double)>& f) {
  double m = 0.0;
  for (std::size_t j = 0; j < a.grid().size(); ++j) m = std::max(m, std::abs(a.values()[j] - f(a.grid().x(j))));
  return m;
}

// Random trigonometric polynomial using the lower third of the modes.
Field random_field(const Grid& g, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<Complex> c(g.num_modes());
  for (std::size_t k = 0; k < g.size() / 6; ++k) c[k] = Complex(normal(rng), k == 0 ? 0.0 : normal(rng));
  return Field::from_coefficients(g, c);
}

}  // namespace

TEST(Grid, SmallGrid) {
  const Grid g = Grid::make(8, pi);
  EXPECT_DOUBLE_EQ(g.spacing(), pi / 4.0);
  EXPECT_DOUBLE_EQ(g.x(0), -pi);
  EXPECT_DOUBLE_EQ(g.wavenumber(1), 1.0);
  EXPECT_DOUBLE_EQ(g.wavenumber(g.nyquist()), 4.0);  // the stored k = -4 mode
  EXPECT_EQ(g.num_modes(), 5u);
}

TEST(Grid, LargeGridSpacing) {
  const Grid g = Grid::make(1024, 32.0 * pi);
  EXPECT_NEAR(g.spacing(), 32.0 * pi / 512.0, 1e-15);
  for (std::size_t j = 1; j < g.size(); ++j) ASSERT_GT(g.x(j), g.x(j - 1));
}

TEST(Grid, RejectsBadSizes) {
  EXPECT_THROW(Grid::make(7, 1.0), std::invalid_argument);
  EXPECT_THROW(Grid::make(4, 1.0), std::invalid_argument);
  EXPECT_THROW(Grid::make(8, 0.0), std::invalid_argument);
  EXPECT_THROW(Grid::make(8, -1.0), std::invalid_argument);
}

TEST(Grid, Wrap) {
  const Grid g = Grid::make(16, 2.0);
  EXPECT_NEAR(g.wrap(2.5), -1.5, 1e-15);
  EXPECT_NEAR(g.wrap(-2.5), 1.5, 1e-15);
  EXPECT_NEAR(g.wrap(2.0), -2.0, 1e-15);
}

TEST(Field, RoundTrip) {
  const Grid g = Grid::make(64, 3.0);
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(g.size());
  for (double& x : v) x = u(rng);
  const Field f = Field::from_values(g, v);
  const Field back = Field::from_coefficients(g, {f.coefficients().begin(), f.coefficients().end()});
  for (std::size_t j = 0; j < g.size(); ++j) EXPECT_NEAR(back.values()[j], v[j], 1e-12);
}

TEST(Multiplier, IdentityAndHilbert) {
  const Grid g = Grid::make(64, pi);
  const Field s = Field::sample(g, [](double x) { return std::sin(x); });
  const Field c = Field::sample(g, [](double x) { return std::cos(x); });
  const Field same = apply_multiplier(s, [](double) { return Complex(1.0, 0.0); });
  EXPECT_LT(max_diff(same, [](double x) { return std::sin(x); }), 1e-14);
  EXPECT_LT(max_diff(apply_multiplier(s, hilbert), [](double x) { return -std::cos(x); }), 1e-14);
  EXPECT_LT(max_diff(apply_multiplier(c, hilbert), [](double x) { return std::sin(x); }), 1e-14);
}

TEST(Multiplier, Linearity) {
  const Grid g = Grid::make(128, 5.0);
  const Field f = random_field(g, 1);
  const Field h = random_field(g, 2);
  const Symbol p = [](double xi) { return Complex(0.0, xi * std::abs(xi)); };
  const Field lhs = apply_multiplier(2.5 * f + (-1.5) * h, p);
  const Field rhs = 2.5 * apply_multiplier(f, p) + (-1.5) * apply_multiplier(h, p);
  double scale = 0.0;
  for (double v : lhs.values()) scale = std::max(scale, std::abs(v));
  for (std::size_t j = 0; j < g.size(); ++j) EXPECT_NEAR(lhs.values()[j], rhs.values()[j], 1e-12 * scale);
}

TEST(Multiplier, HilbertIsAnIsometryOnMeanZeroFields) {
  const Grid g = Grid::make(256, 4.0);
  std::vector<Complex> c(g.num_modes());
  const Field raw = random_field(g, 3);
  std::copy(raw.coefficients().begin(), raw.coefficients().end(), c.begin());
  c[0] = 0.0;
  const Field f = Field::from_coefficients(g, c);
  EXPECT_NEAR(norm(apply_multiplier(f, hilbert), NormKind::L2()), norm(f, NormKind::L2()), 1e-12 * norm(f, NormKind::L2()));
}

TEST(Multiplier, RejectsNonRealSymbols) {
  const Grid g = Grid::make(32, 1.0);
  EXPECT_THROW(Multiplier::from_symbol(g, [](double) { return Complex(0.0, 1.0); }), std::invalid_argument);
  EXPECT_THROW(Multiplier::from_symbol(g, [](double xi) { return Complex(1.0 / xi, 0.0); }), std::invalid_argument);
}

TEST(Derivative, SineAndConstant) {
  const Grid g = Grid::make(64, pi);
  const Field s = Field::sample(g, [](double x) { return std::sin(x); });
  EXPECT_LT(max_diff(derivative(s, 1), [](double x) { return std::cos(x); }), 1e-13);
  EXPECT_LT(max_diff(derivative(s, 3), [](double x) { return -std::cos(x); }), 1e-11);
  const Field k = Field::sample(g, [](double) { return 2.0; });
  EXPECT_LT(max_diff(derivative(k, 1), [](double) { return 0.0; }), 1e-14);
}

TEST(Derivative, CompositionMatchesSecondDerivative) {
  const Grid g = Grid::make(128, 6.0);
  const Field f = random_field(g, 4);
  const Field a = derivative(derivative(f, 1), 1);
  const Field b = derivative(f, 2);
  double scale = 0.0;
  for (double v : b.values()) scale = std::max(scale, std::abs(v));
  for (std::size_t j = 0; j < g.size(); ++j) EXPECT_NEAR(a.values()[j], b.values()[j], 1e-10 * scale);
}

TEST(Interpolate, NodesOffGridAndConstants) {
  const Grid g = Grid::make(32, pi);
  const Field s = Field::sample(g, [](double x) { return std::sin(x); });
  for (std::size_t j = 0; j < g.size(); ++j) EXPECT_NEAR(interpolate(s, g.x(j)), std::sin(g.x(j)), 1e-14);
  EXPECT_NEAR(interpolate(s, pi / 3.0), 0.8660254037844386, 1e-14);
  EXPECT_NEAR(s(pi / 3.0 + 2.0 * pi), 0.8660254037844386, 1e-13);  // periodic
  const Field k = Field::sample(g, [](double) { return -0.75; });
  EXPECT_NEAR(interpolate(k, 0.123), -0.75, 1e-15);
}

TEST(Interpolate, PhaseTableMatchesDirectEvaluation) {
  const Grid g = Grid::make(64, 3.0);
  const Field f = random_field(g, 5);
  const auto ph = fourier_phases(g, 0.4321);
  EXPECT_NEAR(evaluate_with_phases(f.coefficients(), ph), f(0.4321), 1e-12);
}

TEST(Norms, SineOnPeriodicBox) {
  const Grid g = Grid::make(64, pi);
  const Field s = Field::sample(g, [](double x) { return std::sin(x); });
  EXPECT_NEAR(norm(s, NormKind::L2()), std::sqrt(pi), 1e-13);
  EXPECT_NEAR(norm(s, NormKind::Linf()), 1.0, 1e-6);
  // (1 + xi^2) weight at xi = 1 doubles the squared norm.
  EXPECT_NEAR(norm(s, NormKind::H(1)), std::sqrt(2.0 * pi), 1e-13);
  const Field z = Field::zero(g);
  for (auto kind : {NormKind::L2(), NormKind::Linf(), NormKind::H(2), NormKind::HolderHalf()}) {
    EXPECT_EQ(norm(z, kind), 0.0);
  }
}

TEST(Norms, Parseval) {
  const Grid g = Grid::make(256, 7.0);
  const Field f = random_field(g, 6);
  double physical = 0.0;
  for (double v : f.values()) physical += v * v * g.spacing();
  const double spectral = std::pow(norm(f, NormKind::L2()), 2);
  EXPECT_NEAR(physical, spectral, 1e-10 * spectral);
}

TEST(Resolution, TailFractionAndExtrema) {
  const Grid g = Grid::make(128, pi);
  const Field s = Field::sample(g, [](double x) { return std::sin(x); });
  EXPECT_LT(spectral_tail_fraction(s.coefficients(), g), 1e-28);
  const Extremum lo = refined_minimum(s);
  EXPECT_NEAR(lo.value, -1.0, 1e-8);
  EXPECT_NEAR(lo.x, -pi / 2.0, 1e-3);
  const Extremum hi = refined_maximum(s);
  EXPECT_NEAR(hi.x, pi / 2.0, 1e-3);
  std::vector<Complex> c(g.num_modes());
  c[g.dealias_cutoff()] = 1.0;
  EXPECT_NEAR(spectral_tail_fraction(c, g), 1.0, 1e-12);
  // The cutoff mode itself is kept; the next one is removed.
  EXPECT_NEAR(norm(dealiased(Field::from_coefficients(g, c)), NormKind::L2()),
              norm(Field::from_coefficients(g, c), NormKind::L2()), 1e-12);
  c[g.dealias_cutoff()] = 0.0;
  c[g.dealias_cutoff() + 1] = 1.0;
  EXPECT_LT(norm(dealiased(Field::from_coefficients(g, c)), NormKind::L2()), 1e-14);
}

TEST(Resolution, OversamplingKeepsValues) {
  const Grid g = Grid::make(32, pi);
  const Field s = Field::sample(g, [](double x) { return std::cos(2.0 * x); });
  const auto fine = oversampled_values(s, 4);
  ASSERT_EQ(fine.size(), 128u);
  for (std::size_t j = 0; j < fine.size(); ++j) {
    EXPECT_NEAR(fine[j], std::cos(2.0 * (-pi + 2.0 * pi * j / 128.0)), 1e-13);
  }
}
