#include "wavebreak/breaking.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "wavebreak/numerics.hpp"

namespace wavebreak {

BreakingEstimate detect_breaking(std::span<const double> t, std::span<const double> m,
                                 double window_fraction, double growth) {
  if (t.size() != m.size()) throw std::invalid_argument("detect_breaking: size mismatch");
  if (t.empty()) throw NoBreakingEstimate("empty series");
  if (!(window_fraction > 0.0 && window_fraction <= 1.0)) {
    throw std::invalid_argument("window_fraction must lie in (0, 1]");
  }
  const double m0 = std::abs(m.front());
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] < 0.0 && std::abs(m[i]) >= growth * m0 && std::abs(m[i]) > 0.0) idx.push_back(i);
  }
  if (idx.size() < 20) {
    throw NoBreakingEstimate("only " + std::to_string(idx.size()) +
                             " samples with |m| grown by the required factor; need 20");
  }
  const auto take = std::max<std::size_t>(
      10, static_cast<std::size_t>(std::ceil(window_fraction * static_cast<double>(idx.size()))));
  const std::size_t first = idx.size() - std::min(take, idx.size());
  std::vector<double> ts;
  std::vector<double> zs;
  for (std::size_t j = first; j < idx.size(); ++j) {
    ts.push_back(t[idx[j]]);
    zs.push_back(-1.0 / m[idx[j]]);
  }
  // Fit around the window origin so that the result commutes with time shifts.
  const double origin = ts.front();
  for (auto& v : ts) v -= origin;
  const LineFit fit = fit_line(ts, zs);
  if (!(fit.slope < 0.0)) throw NoBreakingEstimate("-1/m is not decreasing on the fit window");
  const double root = -fit.intercept / fit.slope;
  const double var_a = fit.intercept_se * fit.intercept_se;
  const double var_b = fit.slope_se * fit.slope_se;
  const double var = (var_a + root * root * var_b + 2.0 * root * fit.cov) / (fit.slope * fit.slope);
  BreakingEstimate e;
  e.t_est = origin + root;
  e.ci_halfwidth = 1.96 * std::sqrt(std::max(var, 0.0));
  e.window_start = origin + ts.front();
  e.window_end = origin + ts.back();
  e.samples = ts.size();
  return e;
}

}  // namespace wavebreak
