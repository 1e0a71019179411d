#include "transform.hpp"

#include <mutex>

namespace nlsw::detail {

namespace {
// FFTW planning mutates global state; all plans in the process are created
// under one lock.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

DstPlan::DstPlan(int m) : m_(m) {
  std::lock_guard<std::mutex> lock(planner_mutex());
  buf_ = fftw_alloc_real(static_cast<std::size_t>(m_) * m_);
  plan_ = fftw_plan_r2r_2d(m_, m_, buf_, buf_, FFTW_RODFT00, FFTW_RODFT00,
                           FFTW_ESTIMATE);
}

DstPlan::~DstPlan() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_destroy_plan(plan_);
  fftw_free(buf_);
}

void DstPlan::execute(const std::complex<double>* src,
                      std::complex<double>* dst, double scale) {
  std::lock_guard<std::mutex> lock(mutex_);
  const std::size_t n = static_cast<std::size_t>(m_) * m_;
  scratch_.resize(n);
  // Stash imaginary parts first so src and dst may alias.
  for (std::size_t i = 0; i < n; ++i) scratch_[i] = src[i].imag();
  for (std::size_t i = 0; i < n; ++i) buf_[i] = src[i].real();
  fftw_execute(plan_);
  for (std::size_t i = 0; i < n; ++i)
    dst[i] = std::complex<double>(scale * buf_[i], 0.0);
  for (std::size_t i = 0; i < n; ++i) buf_[i] = scratch_[i];
  fftw_execute(plan_);
  for (std::size_t i = 0; i < n; ++i)
    dst[i] += std::complex<double>(0.0, scale * buf_[i]);
}

}  // namespace nlsw::detail
