#pragma once

// Thin RAII layer over FFTW; plan creation and destruction are serialised
// because the FFTW planner is not thread-safe.

#include <fftw3.h>

#include <complex>
#include <cstddef>
#include <mutex>

namespace apchemo::detail {

inline std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

class FftBuffers {
 public:
  /// Real-to-complex transform of an n1 x n2 row-major array (n1 == 1 for 1D).
  FftBuffers(std::size_t n1, std::size_t n2) : n1_(n1), n2_(n2), half_(n2 / 2 + 1) {
    real_ = fftw_alloc_real(n1 * n2);
    spec_ = fftw_alloc_complex(n1 * half_);
    std::lock_guard lock(fftw_planner_mutex());
    const int a = static_cast<int>(n1);
    const int b = static_cast<int>(n2);
    if (n1 == 1) {
      forward_ = fftw_plan_dft_r2c_1d(b, real_, spec_, FFTW_ESTIMATE);
      backward_ = fftw_plan_dft_c2r_1d(b, spec_, real_, FFTW_ESTIMATE);
    } else {
      forward_ = fftw_plan_dft_r2c_2d(a, b, real_, spec_, FFTW_ESTIMATE);
      backward_ = fftw_plan_dft_c2r_2d(a, b, spec_, real_, FFTW_ESTIMATE);
    }
  }
  ~FftBuffers() {
    std::lock_guard lock(fftw_planner_mutex());
    fftw_destroy_plan(forward_);
    fftw_destroy_plan(backward_);
    fftw_free(real_);
    fftw_free(spec_);
  }
  FftBuffers(const FftBuffers&) = delete;
  FftBuffers& operator=(const FftBuffers&) = delete;

  double* real() noexcept { return real_; }
  std::complex<double> spectrum(std::size_t i) const noexcept {
    return {spec_[i][0], spec_[i][1]};
  }
  void scale_spectrum(std::size_t i, double s) noexcept {
    spec_[i][0] *= s;
    spec_[i][1] *= s;
  }
  std::size_t half() const noexcept { return half_; }

  void forward() noexcept { fftw_execute(forward_); }
  /// Unnormalised inverse (FFTW convention).
  void backward() noexcept { fftw_execute(backward_); }

 private:
  std::size_t n1_;
  std::size_t n2_;
  std::size_t half_;
  double* real_ = nullptr;
  fftw_complex* spec_ = nullptr;
  fftw_plan forward_ = nullptr;
  fftw_plan backward_ = nullptr;
};

}  // namespace apchemo::detail
