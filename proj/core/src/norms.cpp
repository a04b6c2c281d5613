#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wavebreak/evolve.hpp"
#include "wavebreak/hypotheses.hpp"
#include "wavebreak/numerics.hpp"

namespace wavebreak {

NormBundle NormBundle::scaled(double s) const {
  if (s < 0.0) throw std::invalid_argument("NormBundle::scaled needs s >= 0");
  NormBundle b = *this;
  for (double* v : {&b.l2, &b.linf, &b.h1, &b.h2, &b.h3, &b.l2_d1, &b.l2_d2, &b.l2_d3, &b.linf_d1,
                    &b.linf_d2, &b.linf_d3, &b.inf_d1, &b.boundary_decay}) {
    *v *= s;
  }
  return b;
}

NormBundle compute_norms(const Field& phi, std::optional<double> decay_tolerance) {
  NormBundle b;
  b.boundary_decay = boundary_decay(phi);
  if (decay_tolerance && b.boundary_decay > *decay_tolerance) {
    throw std::invalid_argument("initial datum does not decay at the boundary: max |d^k phi(-L)| = " +
                                std::to_string(b.boundary_decay));
  }
  const Field d1 = derivative(phi, 1);
  const Field d2 = derivative(phi, 2);
  const Field d3 = derivative(phi, 3);
  b.l2 = norm(phi, NormKind::L2());
  b.linf = norm(phi, NormKind::Linf());
  b.h1 = norm(phi, NormKind::H(1));
  b.h2 = norm(phi, NormKind::H(2));
  b.h3 = norm(phi, NormKind::H(3));
  b.l2_d1 = norm(d1, NormKind::L2());
  b.l2_d2 = norm(d2, NormKind::L2());
  b.l2_d3 = norm(d3, NormKind::L2());
  b.linf_d1 = norm(d1, NormKind::Linf());
  b.linf_d2 = norm(d2, NormKind::Linf());
  b.linf_d3 = norm(d3, NormKind::Linf());
  const Extremum e = refined_minimum(d1);
  b.inf_d1 = e.value;
  b.argmin_d1 = e.x;
  return b;
}

double sobolev_penalty(int s) { return std::sqrt(static_cast<double>(s) + 1.0); }

double holder_half_bruteforce(const Field& f, std::size_t stride) {
  if (stride == 0) throw std::invalid_argument("stride must be positive");
  const auto v = f.values();
  const Grid& g = f.grid();
  double best = 0.0;
  for (std::size_t i = 0; i < v.size(); i += stride) {
    for (std::size_t j = i + stride; j < v.size(); j += stride) {
      const double d = g.x(j) - g.x(i);
      best = std::max(best, std::abs(v[j] - v[i]) / std::sqrt(d));
    }
  }
  return best;
}

B1Result check_b1(const Field& phi) {
  if (phi.grid().half_length() < 40.0) {
    throw std::invalid_argument("check_b1 needs a domain with L >= 40");
  }
  const double p0 = interpolate(phi, 0.0);
  B1Result r;
  r.f0 = -gauss_legendre([&](double x) { return (interpolate(phi, x) - p0) * std::exp(-x); }, 0.0,
                         40.0, 320);
  r.rhs = 4.0 * std::sqrt(norm(phi, NormKind::L2()));
  r.pass = r.f0 >= r.rhs && r.f0 > 0.0;
  if (r.pass) r.t_upper = 4.0 / r.f0;
  return r;
}

}  // namespace wavebreak
