#include "wavebreak/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace wavebreak {

Grid Grid::make(std::size_t n, double half_length) {
  if (n < 8 || (n & (n - 1)) != 0) {
    throw std::invalid_argument("grid size must be a power of two >= 8, got " +
                                std::to_string(n));
  }
  if (!(half_length > 0.0) || !std::isfinite(half_length)) {
    throw std::invalid_argument("grid half_length must be positive and finite");
  }
  return Grid(n, half_length);
}

double Grid::x(std::size_t j) const {
  return -half_length_ + spacing() * static_cast<double>(j);
}

double Grid::wavenumber(std::size_t k) const {
  return std::numbers::pi * static_cast<double>(k) / half_length_;
}

double Grid::dealiased_wavenumber() const { return wavenumber(dealias_cutoff()); }

double Grid::wrap(double x) const {
  const double p = period();
  double r = std::fmod(x + half_length_, p);
  if (r < 0.0) r += p;
  // fmod can return p itself after the shift for values just below a period.
  if (r >= p) r -= p;
  return r - half_length_;
}

}  // namespace wavebreak
