#include "wavebreak/numerics.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace wavebreak {

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("fit_line: size mismatch");
  const std::size_t n = x.size();
  if (n < 2) throw std::invalid_argument("fit_line: need at least two points");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx <= 0.0) throw std::invalid_argument("fit_line: abscissae are constant");
  LineFit fit;
  fit.count = n;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - fit.intercept - fit.slope * x[i];
    ss += r * r;
  }
  fit.residual_rms = std::sqrt(ss / static_cast<double>(n));
  const double s2 = n > 2 ? ss / static_cast<double>(n - 2) : 0.0;
  fit.slope_se = std::sqrt(s2 / sxx);
  fit.intercept_se = std::sqrt(s2 * (1.0 / static_cast<double>(n) + mx * mx / sxx));
  fit.cov = -mx * s2 / sxx;
  return fit;
}

std::vector<double> differentiate(std::span<const double> t, std::span<const double> y) {
  if (t.size() != y.size()) throw std::invalid_argument("differentiate: size mismatch");
  const std::size_t n = t.size();
  if (n < 5) throw std::invalid_argument("differentiate: need at least five samples");
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t start = i < 2 ? 0 : (i + 2 >= n ? n - 5 : i - 2);
    // Derivative of the Lagrange interpolant through five nodes, at t[i].
    double sum = 0.0;
    for (std::size_t j = start; j < start + 5; ++j) {
      double wj = 0.0;
      double denom = 1.0;
      for (std::size_t m = start; m < start + 5; ++m) {
        if (m != j) denom *= t[j] - t[m];
      }
      for (std::size_t k = start; k < start + 5; ++k) {
        if (k == j) continue;
        double prod = 1.0;
        for (std::size_t m = start; m < start + 5; ++m) {
          if (m != j && m != k) prod *= t[i] - t[m];
        }
        wj += prod;
      }
      sum += y[j] * wj / denom;
    }
    d[i] = sum;
  }
  return d;
}

double trapezoid(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("trapezoid: size mismatch");
  double s = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) s += 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
  return s;
}

double gauss_legendre(const std::function<double(double)>& f, double a, double b, int panels) {
  static constexpr std::array<double, 4> nodes = {0.1834346424956498, 0.5255324099163290,
                                                  0.7966664774136267, 0.9602898564975363};
  static constexpr std::array<double, 4> weights = {0.3626837833783620, 0.3137066458778873,
                                                    0.2223810344533745, 0.1012285362903763};
  if (panels < 1) throw std::invalid_argument("gauss_legendre: panels must be positive");
  const double h = (b - a) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    double s = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const double dx = 0.5 * h * nodes[i];
      s += weights[i] * (f(mid - dx) + f(mid + dx));
    }
    total += 0.5 * h * s;
  }
  return total;
}

double bisect(const std::function<double(double)>& f, double a, double b, double tol) {
  double fa = f(a);
  const double fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa < 0.0) == (fb < 0.0)) throw std::invalid_argument("bisect: no sign change");
  while (std::abs(b - a) > tol) {
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    if (fm == 0.0) return m;
    if ((fm < 0.0) == (fa < 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace wavebreak
