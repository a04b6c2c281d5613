#pragma once

#include <cstddef>

namespace wavebreak {

/// Uniform periodic grid on [-L, L) with n points, n a power of two >= 8.
///
/// Points are x_j = -L + 2Lj/n. Wavenumbers are xi_k = pi*k/L for
/// k = -n/2 .. n/2-1; the real transform stores k = 0 .. n/2 where the last
/// entry is the Nyquist mode (k = -n/2).
class Grid {
 public:
  /// Throws std::invalid_argument unless n is a power of two >= 8 and
  /// half_length > 0.
  static Grid make(std::size_t n, double half_length);

  std::size_t size() const { return n_; }
  std::size_t num_modes() const { return n_ / 2 + 1; }
  std::size_t nyquist() const { return n_ / 2; }
  double half_length() const { return half_length_; }
  double period() const { return 2.0 * half_length_; }
  double spacing() const { return 2.0 * half_length_ / static_cast<double>(n_); }

  double x(std::size_t j) const;
  /// Nonnegative wavenumber pi*k/L of stored mode k in [0, n/2].
  double wavenumber(std::size_t k) const;
  /// Largest |xi| kept by the 2/3 dealiasing rule.
  double dealiased_wavenumber() const;
  /// Highest mode index kept by the 2/3 rule (floor(n/3)).
  std::size_t dealias_cutoff() const { return n_ / 3; }

  /// Maps x into [-L, L).
  double wrap(double x) const;

  /// Same point count, same domain.
  bool operator==(const Grid& other) const = default;

 private:
  Grid(std::size_t n, double half_length) : n_(n), half_length_(half_length) {}

  std::size_t n_;
  double half_length_;
};

}  // namespace wavebreak
