#pragma once

#include <functional>
#include <span>
#include <vector>

namespace wavebreak {

/// Least-squares line y = intercept + slope*x with standard errors.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_se = 0.0;
  double intercept_se = 0.0;
  double cov = 0.0;  // covariance of (intercept, slope)
  double residual_rms = 0.0;
  std::size_t count = 0;
};

/// Throws std::invalid_argument for fewer than two points or constant x.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

/// First derivative on a nonuniform, strictly increasing abscissa using the
/// five-point Lagrange stencil (one-sided near the ends). Fourth order.
std::vector<double> differentiate(std::span<const double> t, std::span<const double> y);

double trapezoid(std::span<const double> x, std::span<const double> y);

/// Composite Gauss-Legendre (8 points per panel) of f on [a, b].
double gauss_legendre(const std::function<double(double)>& f, double a, double b, int panels);

/// Bisection for a sign change of f on [a, b]; returns the midpoint of the
/// final bracket once it is shorter than tol.
double bisect(const std::function<double(double)>& f, double a, double b, double tol);

}  // namespace wavebreak
