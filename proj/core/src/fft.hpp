#pragma once

#include <complex>
#include <cstddef>
#include <span>

namespace wavebreak::detail {

// Real-to-complex transform of length n, normalized so that
//   c_k = (1/n) sum_j f_j exp(-2 pi i j k / n),  k = 0..n/2.
// Plans are created once per size and shared; execution is thread safe.
class RealFft {
 public:
  static const RealFft& get(std::size_t n);

  std::size_t size() const { return n_; }

  void forward(std::span<const double> in, std::span<std::complex<double>> out) const;
  // Input is not modified.
  void inverse(std::span<const std::complex<double>> in, std::span<double> out) const;

  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;
  ~RealFft();

 private:
  explicit RealFft(std::size_t n);

  std::size_t n_;
  void* forward_plan_;
  void* inverse_plan_;
};

}  // namespace wavebreak::detail
