#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "wavebreak/grid.hpp"

namespace wavebreak {

using Complex = std::complex<double>;

/// Real periodic grid function together with its Fourier coefficients.
///
/// Coefficients follow f(x) = sum_k c_k exp(i xi_k (x + L)) over
/// k = -n/2 .. n/2-1; only k = 0 .. n/2 are stored (the field is real, so
/// c_{-k} = conj(c_k)). c_0 and the Nyquist coefficient are real. Fields are
/// immutable once built.
class Field {
 public:
  static Field from_values(const Grid& grid, std::vector<double> values);
  static Field from_coefficients(const Grid& grid, std::vector<Complex> coefficients);
  static Field sample(const Grid& grid, const std::function<double(double)>& f);
  static Field zero(const Grid& grid);

  const Grid& grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  std::span<const Complex> coefficients() const { return coefficients_; }

  /// Trigonometric interpolation at any x (reduced modulo the period).
  double operator()(double x) const;

  friend Field operator+(const Field& a, const Field& b);
  friend Field operator-(const Field& a, const Field& b);
  friend Field operator*(double s, const Field& a);

 private:
  Field(Grid grid, std::vector<double> values, std::vector<Complex> coefficients)
      : grid_(grid), values_(std::move(values)), coefficients_(std::move(coefficients)) {}

  Grid grid_;
  std::vector<double> values_;
  std::vector<Complex> coefficients_;
};

/// Fourier symbol p(xi). Must satisfy p(-xi) = conj(p(xi)) and be finite at
/// every grid wavenumber, including xi = 0.
using Symbol = std::function<Complex(double)>;

/// A symbol tabulated on the stored modes of one grid.
class Multiplier {
 public:
  /// Throws std::invalid_argument when the symbol is not conjugate
  /// symmetric within `tolerance` (relative), since the operator would not
  /// map real fields to real fields, or when it is not finite.
  static Multiplier from_symbol(const Grid& grid, const Symbol& symbol, double tolerance = 1e-12);
  static Multiplier from_table(const Grid& grid, std::vector<Complex> table);

  const Grid& grid() const { return grid_; }
  std::span<const Complex> table() const& { return table_; }
  std::span<const Complex> table() && = delete;

  Field apply(const Field& f) const;
  void apply_in_place(std::span<Complex> coefficients) const;

 private:
  Multiplier(Grid grid, std::vector<Complex> table) : grid_(grid), table_(std::move(table)) {}

  Grid grid_;
  std::vector<Complex> table_;
};

Field apply_multiplier(const Field& f, const Symbol& symbol);

/// d^order f / dx^order for order in 1..4; odd orders zero the Nyquist mode.
Field derivative(const Field& f, int order);

double interpolate(const Field& f, double x);

/// exp(i xi_k (x + L)) for the stored modes, for evaluating several
/// coefficient arrays at the same point.
std::vector<Complex> fourier_phases(const Grid& grid, double x);
double evaluate_with_phases(std::span<const Complex> coefficients, std::span<const Complex> phases);

/// Values on the grid refined by `factor` (zero padding), factor a power of two.
std::vector<double> oversampled_values(const Field& f, std::size_t factor);

struct Extremum {
  double value = 0.0;
  double x = 0.0;
};

/// Minimum of f located on a 4x oversampled grid and refined by a local
/// parabola through the three neighbouring samples.
Extremum refined_minimum(const Field& f);
Extremum refined_maximum(const Field& f);

enum class NormType { l2, linf, sobolev, holder_half };

struct NormKind {
  NormType type = NormType::l2;
  int s = 0;

  static NormKind L2() { return {NormType::l2, 0}; }
  static NormKind Linf() { return {NormType::linf, 0}; }
  static NormKind H(int s) { return {NormType::sobolev, s}; }
  static NormKind HolderHalf() { return {NormType::holder_half, 0}; }
};

/// L2 uses Parseval with the domain measure; H^s uses the (1+xi^2)^s weight
/// (s in 1..3); Linf is the max of |f| over a 4x oversampled grid; the
/// C^{0,1/2} seminorm is returned as its upper bound ||f'||_{L2}.
double norm(const Field& f, NormKind kind);

/// Fraction of the L2 energy carried by the top sixth of the modes retained
/// by the 2/3 rule. Used as an under-resolution indicator.
double spectral_tail_fraction(std::span<const Complex> coefficients, const Grid& grid);

/// Zero every mode above the 2/3 cutoff.
Field dealiased(const Field& f);

}  // namespace wavebreak
