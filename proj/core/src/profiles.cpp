#include "wavebreak/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wavebreak {

const std::vector<std::string>& profile_families() {
  static const std::vector<std::string> names = {"neg_sine",  "gaussian_bump", "sech_squared",
                                                 "odd_ramp",  "sine_gaussian", "zero"};
  return names;
}

bool is_profile_family(std::string_view name) {
  const auto& n = profile_families();
  return std::find(n.begin(), n.end(), name) != n.end();
}

Field make_profile(const Grid& grid, const ProfileSpec& spec) {
  if (!is_profile_family(spec.family)) throw std::invalid_argument("unknown profile family '" + spec.family + "'");
  if (!(spec.width > 0.0)) throw std::invalid_argument("profile width must be positive");
  if (!std::isfinite(spec.amplitude) || !std::isfinite(spec.lambda) || !std::isfinite(spec.wavenumber)) {
    throw std::invalid_argument("profile parameters must be finite");
  }
  const double a = spec.amplitude * spec.lambda;
  const double k = spec.wavenumber;
  const double w = spec.width;
  const std::string& f = spec.family;
  if (f == "zero" || a == 0.0) return Field::zero(grid);
  if (f == "neg_sine") return Field::sample(grid, [&](double x) { return -a * std::sin(k * x); });
  if (f == "gaussian_bump") return Field::sample(grid, [&](double x) { return a * std::exp(-x * x / (w * w)); });
  if (f == "sech_squared") {
    return Field::sample(grid, [&](double x) {
      const double s = 1.0 / std::cosh(x / w);
      return a * s * s;
    });
  }
  if (f == "odd_ramp") {
    return Field::sample(grid, [&](double x) {
      const double y = x / w;
      return -a * y * std::exp(0.5 * (1.0 - y * y));
    });
  }
  return Field::sample(grid, [&](double x) { return -a * std::sin(k * x) * std::exp(-x * x / (w * w)); });
}

}  // namespace wavebreak
