#include "wavebreak/model.hpp"

#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace wavebreak {

namespace {

constexpr std::array<std::pair<Family, std::string_view>, 6> kNames = {{
    {Family::burgers, "burgers"},
    {Family::burgers_hilbert, "burgers_hilbert"},
    {Family::fkdv, "fkdv"},
    {Family::whitham, "whitham"},
    {Family::whitham_rescaled, "whitham_rescaled"},
    {Family::kdv, "kdv"},
}};

double sgn(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

}  // namespace

std::string_view to_string(Family family) {
  for (const auto& [f, name] : kNames) {
    if (f == family) return name;
  }
  return "unknown";
}

std::optional<Family> parse_family(std::string_view name) {
  for (const auto& [f, n] : kNames) {
    if (n == name) return f;
  }
  return std::nullopt;
}

double whitham_phase(double z) {
  z = std::abs(z);
  if (z < 1e-4) return 1.0 - z * z / 6.0;  // tanh z / z = 1 - z^2/3 + ...
  return std::sqrt(std::tanh(z) / z);
}

ModelSpec ModelSpec::make(Family family, double alpha, double epsilon) {
  switch (family) {
    case Family::fkdv:
      if (!(alpha >= -1.0 && alpha < 0.0)) {
        throw std::invalid_argument("fkdv requires alpha in [-1, 0), got " + std::to_string(alpha));
      }
      return ModelSpec(family, alpha, 1.0);
    case Family::burgers:
    case Family::whitham_rescaled:
    case Family::kdv:
      if (!(epsilon > 0.0 && epsilon <= 1.0)) {
        throw std::invalid_argument(std::string(to_string(family)) +
                                    " requires epsilon in (0, 1], got " + std::to_string(epsilon));
      }
      return ModelSpec(family, 0.0, epsilon);
    case Family::burgers_hilbert:
    case Family::whitham:
      return ModelSpec(family, 0.0, 1.0);
  }
  throw std::invalid_argument("unknown model family");
}

double ModelSpec::transport() const {
  switch (family_) {
    case Family::burgers:
    case Family::whitham_rescaled:
    case Family::kdv:
      return epsilon_;
    default:
      return 1.0;
  }
}

double ModelSpec::linear_speed() const {
  switch (family_) {
    case Family::whitham:
    case Family::whitham_rescaled:
    case Family::kdv:
      return 1.0;
    default:
      return 0.0;
  }
}

Complex ModelSpec::symbol(double xi) const {
  const Complex i(0.0, 1.0);
  switch (family_) {
    case Family::burgers:
      return 0.0;
    case Family::burgers_hilbert:
      return -i * sgn(xi);
    case Family::fkdv:
      return xi == 0.0 ? Complex(0.0) : i * xi * std::pow(std::abs(xi), alpha_);
    case Family::whitham:
      return -i * xi * whitham_phase(xi);
    case Family::whitham_rescaled:
      return -i * xi * whitham_phase(std::sqrt(epsilon_) * xi);
    case Family::kdv:
      return -i * xi + i * epsilon_ * xi * xi * xi / 6.0;
  }
  return 0.0;
}

Multiplier ModelSpec::multiplier(const Grid& grid) const {
  return Multiplier::from_symbol(grid, [this](double xi) { return symbol(xi); });
}

std::string ModelSpec::describe() const {
  std::ostringstream os;
  os << to_string(family_);
  if (family_ == Family::fkdv) os << "(alpha=" << alpha_ << ")";
  if (transport() != 1.0 || family_ == Family::kdv) os << "(eps=" << epsilon_ << ")";
  return os.str();
}

Field dispersion_rhs(const ModelSpec& model, const Field& u) {
  return model.multiplier(u.grid()).apply(u);
}

}  // namespace wavebreak
