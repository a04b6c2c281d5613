#include "wavebreak/kernel.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace wavebreak {

namespace {

using boost::math::quadrature::gauss_kronrod;

constexpr double kSqrt2OverPi = 0.79788456080286535588;  // sqrt(2/pi)
constexpr double kCutoff = 20.0;                           // a*xi beyond which g < 1e-17

struct Integral {
  double value = 0.0;
  double error = 0.0;
};

// g(xi) = (sqrt(tanh(a xi)) - 1)/sqrt(a xi): the symbol minus its |a xi|^{-1/2} tail.
double g_times_sqrt(double z) {  // g * sqrt(a xi) as a function of z = a xi
  return std::sqrt(std::tanh(z)) - 1.0;
}

// int_0^inf w(x xi) xi^p g(xi) dxi with w = cos (p = 0) or sin (p = 1), split
// into panels of whole half-periods (about x/2 of them per panel for large
// x); the first panel uses xi = s^2 to absorb the xi^{-1/2} endpoint
// behaviour.
Integral oscillatory(double x, double a, bool derivative) {
  const double upper = kCutoff / a;
  const double panel = std::min(std::numbers::pi / x * std::max(1.0, std::floor(0.5 * x)), upper);
  auto integrand = [&](double xi) {
    const double z = a * xi;
    const double g = g_times_sqrt(z) / std::sqrt(z);
    return derivative ? xi * std::sin(x * xi) * g : std::cos(x * xi) * g;
  };
  Integral out;
  double err = 0.0;
  {
    const double s_max = std::sqrt(panel);
    auto first = [&](double s) {
      if (s == 0.0) return derivative ? 0.0 : 2.0 * (g_times_sqrt(0.0)) / std::sqrt(a);
      const double xi = s * s;
      const double factor = 2.0 * g_times_sqrt(a * xi) / std::sqrt(a);  // 2 s g(s^2)
      return derivative ? xi * std::sin(x * xi) * factor : std::cos(x * xi) * factor;
    };
    out.value += gauss_kronrod<double, 31>::integrate(first, 0.0, s_max, 8, 1e-10, &err);
    out.error += err;
  }
  for (double lo = panel; lo < upper; lo += panel) {
    const double hi = std::min(lo + panel, upper);
    double l1 = 0.0;
    out.value += gauss_kronrod<double, 31>::integrate(integrand, lo, hi, 8, 1e-10, &err, &l1);
    out.error += err;
  }
  return out;
}

}  // namespace

KernelTable kernel_table(const ModelSpec& model, const std::vector<double>& abscissae) {
  if (model.family() != Family::whitham && model.family() != Family::whitham_rescaled) {
    throw std::invalid_argument("kernel_table needs a whitham or whitham_rescaled model");
  }
  for (std::size_t i = 0; i < abscissae.size(); ++i) {
    if (!(abscissae[i] > 0.0) || (i > 0 && !(abscissae[i] > abscissae[i - 1]))) {
      throw std::invalid_argument("kernel abscissae must be positive and strictly increasing");
    }
  }
  KernelTable table;
  table.epsilon = model.epsilon();
  const double a = std::sqrt(table.epsilon);
  const std::size_t n = abscissae.size();
  table.x = abscissae;
  table.k.resize(n);
  table.k_prime.resize(n);
  table.quad_error.resize(n);
  table.converged.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = abscissae[i];
    const Integral ik = oscillatory(x, a, false);
    const Integral ip = oscillatory(x, a, true);
    // Closed-form transform of the subtracted |a xi|^{-1/2} tail.
    table.k[i] = 1.0 / std::sqrt(a * x) + kSqrt2OverPi * ik.value;
    table.k_prime[i] = -0.5 / std::sqrt(a) * std::pow(x, -1.5) - kSqrt2OverPi * ip.value;
    table.quad_error[i] = kSqrt2OverPi * std::max(ik.error, ip.error);
    table.converged[i] = table.quad_error[i] <= 1e-8;
  }
  return table;
}

std::vector<double> hur_abscissae(double epsilon, double eta0, std::size_t log_points,
                                  std::size_t linear_points) {
  if (log_points < 2 || linear_points < 1) throw std::invalid_argument("too few kernel abscissae");
  const double s = std::sqrt(epsilon) * eta0;
  const double x_max = 60.0 * std::sqrt(epsilon);
  std::vector<double> xs;
  xs.reserve(log_points + linear_points);
  for (std::size_t i = 0; i < log_points; ++i) {
    const double e = -12.0 + 12.0 * static_cast<double>(i) / static_cast<double>(log_points - 1);
    xs.push_back(s * std::exp2(e));
  }
  for (std::size_t i = 1; i <= linear_points; ++i) {
    xs.push_back(s + (x_max - s) * static_cast<double>(i) / static_cast<double>(linear_points));
  }
  return xs;
}

double HurConstants::l0_effective() const { return std::pow(epsilon, -0.25) * l0; }
double HurConstants::l_inf_effective() const { return std::pow(epsilon, -0.5) * l_inf; }

HurConstants estimate_hur_constants(const KernelTable& table, double eta0, double safety) {
  if (!(eta0 > 0.0 && eta0 <= 1.0)) throw std::invalid_argument("eta0 must lie in (0, 1]");
  const double eps = table.epsilon;
  const double s = std::sqrt(eps) * eta0;
  HurConstants h;
  h.eta0 = eta0;
  h.epsilon = eps;
  double near = 0.0;
  std::vector<double> fx;
  std::vector<double> fy;
  for (std::size_t i = 0; i < table.x.size(); ++i) {
    const double x = table.x[i];
    if (x <= s * (1.0 + 1e-12)) {
      ++h.near_samples;
      near = std::max({near, table.k[i] * std::sqrt(x), std::abs(table.k_prime[i]) * std::pow(x, 1.5)});
    }
    if (x >= s * (1.0 - 1e-12)) {
      fx.push_back(x);
      fy.push_back(std::abs(table.k_prime[i]));
    }
  }
  h.far_samples = fx.size();
  if (h.near_samples < 64) {
    throw std::invalid_argument("kernel table has " + std::to_string(h.near_samples) +
                                " samples below sqrt(eps)*eta0; need at least 64");
  }
  if (fx.size() < 2 || fx.back() < 50.0 * std::sqrt(eps)) {
    throw std::invalid_argument("kernel table must extend to 50*sqrt(eps)");
  }
  for (std::size_t i = 1; i < fx.size(); ++i) {
    h.l_inf_partial += 0.5 * (fx[i] - fx[i - 1]) * (fy[i] + fy[i - 1]);
  }
  // K' keeps one sign far out, so the remaining integral is |K(x_max)|.
  const auto last = std::find(table.x.begin(), table.x.end(), fx.back()) - table.x.begin();
  h.l_inf_tail = std::abs(table.k[static_cast<std::size_t>(last)]);
  h.l0 = safety * std::pow(eps, 0.25) * near;
  h.l_inf = safety * std::sqrt(eps) * (h.l_inf_partial + h.l_inf_tail);
  return h;
}

bool hur_bounds_hold(const KernelTable& table, const HurConstants& hur) {
  const double s = std::sqrt(hur.epsilon) * hur.eta0;
  const double l0 = hur.l0_effective();
  for (std::size_t i = 0; i < table.x.size(); ++i) {
    const double x = table.x[i];
    if (x > s * (1.0 + 1e-12)) continue;
    if (table.k[i] > l0 / std::sqrt(x)) return false;
    if (std::abs(table.k_prime[i]) > l0 * std::pow(x, -1.5)) return false;
  }
  return true;
}

}  // namespace wavebreak
