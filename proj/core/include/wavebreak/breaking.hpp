#pragma once

#include <span>
#include <stdexcept>

namespace wavebreak {

struct BreakingEstimate {
  double t_est = 0.0;
  double ci_halfwidth = 0.0;  // 95% half width from the fit residual
  double window_start = 0.0;
  double window_end = 0.0;
  double sup_u_at_detection = 0.0;
  std::size_t samples = 0;
  bool resolved_window = true;  // fit used only samples below the tail threshold
};

/// Raised when the series shows no usable blow-up trend.
class NoBreakingEstimate : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Fits z = -1/m(t) by least squares on the trailing `window_fraction` of the
/// samples with m < 0 and |m| >= growth*|m(t_0)|, and returns the root of the
/// fitted line. Needs at least 20 qualifying samples and a decreasing fit.
BreakingEstimate detect_breaking(std::span<const double> t, std::span<const double> m,
                                 double window_fraction = 0.3, double growth = 4.0);

}  // namespace wavebreak
