#pragma once

#include <cstddef>
#include <vector>

#include "wavebreak/model.hpp"

namespace wavebreak {

/// Physical-space Whitham kernel
///   K_eps(x) = (2pi)^{-1/2} int exp(i x xi) sqrt(tanh(sqrt(eps) xi)/(sqrt(eps) xi)) dxi
/// tabulated at positive abscissae (K is even). eps = 1 is the unscaled kernel.
struct KernelTable {
  double epsilon = 1.0;
  std::vector<double> x;
  std::vector<double> k;
  std::vector<double> k_prime;
  std::vector<double> quad_error;  // max of the K and K' error estimates
  std::vector<bool> converged;     // quad_error <= 1e-8
};

/// Requires model.family() in {whitham, whitham_rescaled} and positive,
/// strictly increasing abscissae; throws std::invalid_argument otherwise.
KernelTable kernel_table(const ModelSpec& model, const std::vector<double>& abscissae);

/// Abscissae for estimate_hur_constants: `log_points` log-spaced points on
/// [2^-12 s, s] and `linear_points` uniform points on (s, x_max] where
/// s = sqrt(eps)*eta0 and x_max = 60 sqrt(eps).
std::vector<double> hur_abscissae(double epsilon, double eta0, std::size_t log_points,
                                  std::size_t linear_points);

/// Constants of the kernel-singularity bounds
///   K_eps(x) <= eps^{-1/4} L0/sqrt(x),  |K_eps'(x)| <= eps^{-1/4} L0/x^{3/2}  on 0 < x <= sqrt(eps) eta0
///   int_{sqrt(eps) eta0}^inf |K_eps'| <= eps^{-1/2} L_inf.
/// l0 and l_inf are the eps-normalized values; the effective bounds used
/// for the kernel at hand are l0_effective() and l_inf_effective().
struct HurConstants {
  double l0 = 0.0;
  double l_inf = 0.0;
  double eta0 = 1.0;
  double epsilon = 1.0;
  double l_inf_partial = 0.0;  // quadrature part of l_inf before the tail and safety factor
  double l_inf_tail = 0.0;
  std::size_t near_samples = 0;
  std::size_t far_samples = 0;

  double l0_effective() const;
  double l_inf_effective() const;
};

/// Throws std::invalid_argument when the table has fewer than 64 samples in
/// (0, sqrt(eps) eta0] or does not reach 50 sqrt(eps).
HurConstants estimate_hur_constants(const KernelTable& table, double eta0, double safety = 1.05);

/// True when every tabulated sample satisfies the bounds with the given constants.
bool hur_bounds_hold(const KernelTable& table, const HurConstants& hur);

}  // namespace wavebreak
