#include "wavebreak/field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "fft.hpp"

namespace wavebreak {

namespace {

void check_finite(std::span<const double> values) {
  for (double v : values) {
    if (!std::isfinite(v)) throw std::invalid_argument("field values must be finite");
  }
}

void check_same_grid(const Field& a, const Field& b) {
  if (!(a.grid() == b.grid())) throw std::invalid_argument("fields live on different grids");
}

}  // namespace

Field Field::from_values(const Grid& grid, std::vector<double> values) {
  if (values.size() != grid.size()) {
    throw std::invalid_argument("expected " + std::to_string(grid.size()) + " samples, got " +
                                std::to_string(values.size()));
  }
  check_finite(values);
  std::vector<Complex> coefficients(grid.num_modes());
  detail::RealFft::get(grid.size()).forward(values, coefficients);
  coefficients.front().imag(0.0);
  coefficients.back().imag(0.0);
  return Field(grid, std::move(values), std::move(coefficients));
}

Field Field::from_coefficients(const Grid& grid, std::vector<Complex> coefficients) {
  if (coefficients.size() != grid.num_modes()) {
    throw std::invalid_argument("coefficient count does not match grid");
  }
  coefficients.front().imag(0.0);
  coefficients.back().imag(0.0);
  std::vector<double> values(grid.size());
  detail::RealFft::get(grid.size()).inverse(coefficients, values);
  check_finite(values);
  return Field(grid, std::move(values), std::move(coefficients));
}

Field Field::sample(const Grid& grid, const std::function<double(double)>& f) {
  std::vector<double> values(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) values[j] = f(grid.x(j));
  return from_values(grid, std::move(values));
}

Field Field::zero(const Grid& grid) {
  return Field(grid, std::vector<double>(grid.size(), 0.0),
               std::vector<Complex>(grid.num_modes(), Complex{}));
}

double Field::operator()(double x) const { return interpolate(*this, x); }

Field operator+(const Field& a, const Field& b) {
  check_same_grid(a, b);
  std::vector<double> v(a.values_.size());
  std::vector<Complex> c(a.coefficients_.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = a.values_[j] + b.values_[j];
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = a.coefficients_[k] + b.coefficients_[k];
  return Field(a.grid_, std::move(v), std::move(c));
}

Field operator-(const Field& a, const Field& b) { return a + (-1.0) * b; }

Field operator*(double s, const Field& a) {
  std::vector<double> v(a.values_);
  std::vector<Complex> c(a.coefficients_);
  for (auto& x : v) x *= s;
  for (auto& x : c) x *= s;
  return Field(a.grid_, std::move(v), std::move(c));
}

Multiplier Multiplier::from_symbol(const Grid& grid, const Symbol& symbol, double tolerance) {
  std::vector<Complex> table(grid.num_modes());
  for (std::size_t k = 0; k < grid.num_modes(); ++k) {
    const double xi = grid.wavenumber(k);
    const Complex plus = symbol(xi);
    const Complex minus = symbol(-xi);
    if (!std::isfinite(plus.real()) || !std::isfinite(plus.imag()) ||
        !std::isfinite(minus.real()) || !std::isfinite(minus.imag())) {
      throw std::invalid_argument("symbol is not finite at xi = " + std::to_string(xi));
    }
    const double scale = std::max(1.0, std::abs(plus));
    if (k < grid.nyquist() && std::abs(minus - std::conj(plus)) > tolerance * scale) {
      throw std::invalid_argument("symbol violates p(-xi) = conj(p(xi)) at xi = " +
                                  std::to_string(xi) + "; operator would not be real");
    }
    // The Nyquist mode is its own mirror; keep the part that maps real to real.
    table[k] = k == grid.nyquist() ? Complex(0.5 * (plus + minus).real(), 0.0) : plus;
  }
  return Multiplier(grid, std::move(table));
}

Multiplier Multiplier::from_table(const Grid& grid, std::vector<Complex> table) {
  if (table.size() != grid.num_modes()) throw std::invalid_argument("multiplier table size");
  table.front().imag(0.0);
  table.back().imag(0.0);
  return Multiplier(grid, std::move(table));
}

Field Multiplier::apply(const Field& f) const {
  if (!(f.grid() == grid_)) throw std::invalid_argument("multiplier built for another grid");
  std::vector<Complex> c(f.coefficients().begin(), f.coefficients().end());
  apply_in_place(c);
  return Field::from_coefficients(grid_, std::move(c));
}

void Multiplier::apply_in_place(std::span<Complex> coefficients) const {
  for (std::size_t k = 0; k < coefficients.size(); ++k) coefficients[k] *= table_[k];
}

Field apply_multiplier(const Field& f, const Symbol& symbol) {
  return Multiplier::from_symbol(f.grid(), symbol).apply(f);
}

Field derivative(const Field& f, int order) {
  if (order < 1 || order > 4) throw std::invalid_argument("derivative order must be in 1..4");
  const Grid& g = f.grid();
  std::vector<Complex> c(f.coefficients().begin(), f.coefficients().end());
  const Complex i(0.0, 1.0);
  for (std::size_t k = 0; k < c.size(); ++k) {
    c[k] *= std::pow(i * g.wavenumber(k), order);
  }
  if (order % 2 == 1) c.back() = 0.0;
  return Field::from_coefficients(g, std::move(c));
}

std::vector<Complex> fourier_phases(const Grid& grid, double x) {
  const std::size_t m = grid.num_modes();
  std::vector<Complex> phases(m);
  const double shifted = grid.wrap(x) + grid.half_length();
  const double dtheta = grid.wavenumber(1) * shifted;
  const Complex step = std::polar(1.0, dtheta);
  // Recurrence with an exact restart every 64 modes bounds the drift.
  Complex w(1.0, 0.0);
  for (std::size_t k = 0; k < m; ++k) {
    if (k % 64 == 0) w = std::polar(1.0, dtheta * static_cast<double>(k));
    phases[k] = w;
    w *= step;
  }
  return phases;
}

double evaluate_with_phases(std::span<const Complex> coefficients, std::span<const Complex> phases) {
  const std::size_t m = coefficients.size();
  double sum = 0.0;
  for (std::size_t k = 1; k + 1 < m; ++k) {
    sum += coefficients[k].real() * phases[k].real() - coefficients[k].imag() * phases[k].imag();
  }
  const Complex last = coefficients[m - 1] * phases[m - 1];
  return coefficients[0].real() + 2.0 * sum + last.real();
}

double interpolate(const Field& f, double x) {
  const auto phases = fourier_phases(f.grid(), x);
  return evaluate_with_phases(f.coefficients(), phases);
}

std::vector<double> oversampled_values(const Field& f, std::size_t factor) {
  if (factor == 0 || (factor & (factor - 1)) != 0) {
    throw std::invalid_argument("oversampling factor must be a power of two");
  }
  if (factor == 1) return {f.values().begin(), f.values().end()};
  const std::size_t n = f.grid().size() * factor;
  std::vector<Complex> padded(n / 2 + 1, Complex{});
  const auto c = f.coefficients();
  std::copy(c.begin(), c.end(), padded.begin());
  padded[c.size() - 1] *= 0.5;  // split the Nyquist mode between +/- n/2
  std::vector<double> out(n);
  detail::RealFft::get(n).inverse(padded, out);
  return out;
}

namespace {

Extremum refine_extremum(std::span<const double> v, std::size_t idx, double h, double x0) {
  const std::size_t n = v.size();
  const double ym = v[(idx + n - 1) % n];
  const double y0 = v[idx];
  const double yp = v[(idx + 1) % n];
  const double denom = ym - 2.0 * y0 + yp;
  double shift = 0.0;
  double value = y0;
  if (denom != 0.0) {
    shift = std::clamp(0.5 * (ym - yp) / denom, -0.5, 0.5);
    value = y0 - 0.25 * (ym - yp) * shift;
  }
  return {value, x0 + (static_cast<double>(idx) + shift) * h};
}

}  // namespace

Extremum refined_minimum(const Field& f) {
  constexpr std::size_t factor = 4;
  const auto v = oversampled_values(f, factor);
  const auto it = std::min_element(v.begin(), v.end());
  const double h = f.grid().spacing() / factor;
  auto e = refine_extremum(v, static_cast<std::size_t>(it - v.begin()), h, -f.grid().half_length());
  e.value = std::min(e.value, *it);
  e.x = f.grid().wrap(e.x);
  return e;
}

Extremum refined_maximum(const Field& f) {
  auto e = refined_minimum((-1.0) * f);
  e.value = -e.value;
  return e;
}

double norm(const Field& f, NormKind kind) {
  const Grid& g = f.grid();
  const auto c = f.coefficients();
  auto weighted = [&](auto weight) {
    double sum = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k) {
      const double mult = (k == 0 || k == g.nyquist()) ? 1.0 : 2.0;
      sum += mult * weight(g.wavenumber(k)) * std::norm(c[k]);
    }
    return std::sqrt(g.period() * sum);
  };
  switch (kind.type) {
    case NormType::l2:
      return weighted([](double) { return 1.0; });
    case NormType::sobolev: {
      if (kind.s < 1 || kind.s > 3) {
        throw std::invalid_argument("H^s norm supports s in {1,2,3}, got " + std::to_string(kind.s));
      }
      const int s = kind.s;
      return weighted([s](double xi) { return std::pow(1.0 + xi * xi, s); });
    }
    case NormType::holder_half:
      // |f(x)-f(y)| <= ||f'||_2 |x-y|^{1/2} by Cauchy-Schwarz.
      return norm(derivative(f, 1), NormKind::L2());
    case NormType::linf: {
      const auto v = oversampled_values(f, 4);
      double m = 0.0;
      for (double x : v) m = std::max(m, std::abs(x));
      return m;
    }
  }
  throw std::invalid_argument("unknown norm kind");
}

double spectral_tail_fraction(std::span<const Complex> coefficients, const Grid& grid) {
  const std::size_t cutoff = std::min(grid.dealias_cutoff(), coefficients.size() - 1);
  const std::size_t start = cutoff - cutoff / 6;
  double total = 0.0;
  double tail = 0.0;
  for (std::size_t k = 0; k <= cutoff; ++k) {
    const double e = (k == 0 ? 1.0 : 2.0) * std::norm(coefficients[k]);
    total += e;
    if (k > start) tail += e;
  }
  return total > 0.0 ? tail / total : 0.0;
}

Field dealiased(const Field& f) {
  std::vector<Complex> c(f.coefficients().begin(), f.coefficients().end());
  for (std::size_t k = f.grid().dealias_cutoff() + 1; k < c.size(); ++k) c[k] = 0.0;
  return Field::from_coefficients(f.grid(), std::move(c));
}

}  // namespace wavebreak
