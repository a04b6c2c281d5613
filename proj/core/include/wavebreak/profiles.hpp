#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wavebreak/field.hpp"

namespace wavebreak {

/// Named initial data. Every family is multiplied by `lambda` at the end.
///
///   neg_sine       -a sin(k x)
///   gaussian_bump   a exp(-x^2/w^2)
///   sech_squared    a sech^2(x/w)
///   odd_ramp       -a (x/w) exp((1 - x^2/w^2)/2)    (phi'(0) = -a sqrt(e)/w)
///   sine_gaussian  -a sin(k x) exp(-x^2/w^2)
///   zero            0
struct ProfileSpec {
  std::string family = "neg_sine";
  double amplitude = 1.0;
  double wavenumber = 1.0;
  double width = 1.0;
  double lambda = 1.0;
};

const std::vector<std::string>& profile_families();
bool is_profile_family(std::string_view name);

/// Throws std::invalid_argument for an unknown family or a non-positive width.
Field make_profile(const Grid& grid, const ProfileSpec& spec);

}  // namespace wavebreak
