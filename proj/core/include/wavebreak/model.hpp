#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "wavebreak/field.hpp"

namespace wavebreak {

enum class Family { burgers, burgers_hilbert, fkdv, whitham, whitham_rescaled, kdv };

std::string_view to_string(Family family);
std::optional<Family> parse_family(std::string_view name);

/// An equation written as  u_t + c u u_x = D[u]  with D a Fourier multiplier.
///
///   burgers           D = 0                              c = eps
///   burgers_hilbert   D = H, symbol -i sgn(xi)           c = 1
///   fkdv              D = |D|^alpha d_x                  c = 1
///   whitham           D = -K * d_x                       c = 1
///   whitham_rescaled  D = -K_eps * d_x                   c = eps
///   kdv               D = -d_x - (eps/6) d_x^3           c = eps
class ModelSpec {
 public:
  /// Throws std::invalid_argument on parameters outside the family's range:
  /// fkdv needs -1 <= alpha < 0; burgers, whitham_rescaled and kdv need
  /// 0 < eps <= 1; the other families ignore eps and take it as 1.
  static ModelSpec make(Family family, double alpha = 0.0, double epsilon = 1.0);

  Family family() const { return family_; }
  double alpha() const { return alpha_; }
  double epsilon() const { return epsilon_; }

  double transport() const;
  /// Bound on the group speed of the linear part at low frequency; enters
  /// the advective CFL limit together with c*|u|.
  double linear_speed() const;

  Complex symbol(double xi) const;
  Multiplier multiplier(const Grid& grid) const;

  std::string describe() const;

 private:
  ModelSpec(Family f, double a, double e) : family_(f), alpha_(a), epsilon_(e) {}

  Family family_;
  double alpha_;
  double epsilon_;
};

/// The dispersive term D[u] of the model.
Field dispersion_rhs(const ModelSpec& model, const Field& u);

/// sqrt(tanh(z)/z) with its limit 1 at 0.
double whitham_phase(double z);

}  // namespace wavebreak
