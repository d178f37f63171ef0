#ifndef VORTEX_TRANSFORM_HPP
#define VORTEX_TRANSFORM_HPP

#include <fftw3.h>

#include <cstring>
#include <map>
#include <memory>
#include <mutex>

#include "vortex/field.hpp"

namespace vortex {

namespace detail {

inline std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

/// Real-to-complex / complex-to-real plan pair with its own aligned scratch.
/// Not shareable between threads; see transform_plan().
class FftPlan {
 public:
  explicit FftPlan(int n) : n_(n), half_(n / 2 + 1) {
    real_ = static_cast<double*>(fftw_malloc(sizeof(double) * n * n));
    spec_ = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n * half_));
    std::lock_guard lock(planner_mutex());
    // FFTW_ESTIMATE keeps plan selection independent of timing, so results
    // are reproducible bit for bit.
    forward_ = fftw_plan_dft_r2c_2d(n, n, real_, spec_, FFTW_ESTIMATE);
    backward_ = fftw_plan_dft_c2r_2d(n, n, spec_, real_, FFTW_ESTIMATE);
  }
  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;
  ~FftPlan() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(forward_);
    fftw_destroy_plan(backward_);
    fftw_free(real_);
    fftw_free(spec_);
  }

  void to_physical(const complex* coeffs, double* out) {
    for (int m1 = 0; m1 < n_; ++m1)
      std::memcpy(spec_ + m1 * half_, coeffs + static_cast<std::size_t>(m1) * n_,
                  sizeof(fftw_complex) * half_);
    fftw_execute(backward_);
    std::memcpy(out, real_, sizeof(double) * n_ * n_);
  }

  void to_spectral(const double* values, complex* coeffs) {
    std::memcpy(real_, values, sizeof(double) * n_ * n_);
    fftw_execute(forward_);
    const double norm = 1.0 / (static_cast<double>(n_) * n_);
    for (int m1 = 0; m1 < n_; ++m1) {
      for (int m2 = 0; m2 < half_; ++m2) {
        const auto& s = spec_[m1 * half_ + m2];
        coeffs[static_cast<std::size_t>(m1) * n_ + m2] = complex(s[0] * norm, s[1] * norm);
      }
      const int r1 = (n_ - m1) % n_;
      for (int m2 = half_; m2 < n_; ++m2) {
        const auto& s = spec_[r1 * half_ + (n_ - m2)];
        coeffs[static_cast<std::size_t>(m1) * n_ + m2] = complex(s[0] * norm, -s[1] * norm);
      }
    }
  }

 private:
  int n_;
  int half_;
  double* real_ = nullptr;
  fftw_complex* spec_ = nullptr;
  fftw_plan forward_ = nullptr;
  fftw_plan backward_ = nullptr;
};

/// One plan per (thread, N).
inline FftPlan& transform_plan(int n) {
  thread_local std::map<int, std::unique_ptr<FftPlan>> plans;
  auto& slot = plans[n];
  if (!slot) slot = std::make_unique<FftPlan>(n);
  return *slot;
}

}  // namespace detail

/// Point values of a Hermitian-symmetric field. Only the half spectrum
/// m2 <= N/2 is read.
inline PhysicalField to_physical(const ScalarField& f) {
  if (f.coeffs.size() != f.grid.size())
    throw std::invalid_argument("to_physical: field size does not match its grid");
  PhysicalField out(f.grid);
  detail::transform_plan(f.grid.n()).to_physical(f.coeffs.data(), out.values.data());
  return out;
}

inline ScalarField to_spectral(const PhysicalField& p) {
  if (p.values.size() != p.grid.size())
    throw std::invalid_argument("to_spectral: value count does not match its grid");
  ScalarField out(p.grid);
  detail::transform_plan(p.grid.n()).to_spectral(p.values.data(), out.coeffs.data());
  return out;
}

}  // namespace vortex

#endif  // VORTEX_TRANSFORM_HPP
