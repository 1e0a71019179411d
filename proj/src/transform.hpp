#ifndef NLSW_SRC_TRANSFORM_HPP
#define NLSW_SRC_TRANSFORM_HPP

#include <complex>
#include <mutex>
#include <vector>

#include <fftw3.h>

namespace nlsw::detail {

/// Unnormalized 2D DST-I on an M x M block (FFTW RODFT00 both axes):
///   T(u)_{pq} = 4 sum_{j,k} u_{jk} sin(pi p j / N) sin(pi q k / N),  N = M+1.
/// T is its own inverse up to the factor (2N)^2. Complex data is transformed
/// as two real passes. Execution is serialized; planning uses FFTW_ESTIMATE
/// so identical inputs always produce identical outputs.
class DstPlan {
public:
  explicit DstPlan(int m);
  ~DstPlan();

  DstPlan(const DstPlan&) = delete;
  DstPlan& operator=(const DstPlan&) = delete;

  /// dst = scale * T(src), elementwise over the complex block.
  void execute(const std::complex<double>* src, std::complex<double>* dst,
               double scale);

private:
  int m_;
  double* buf_;
  fftw_plan plan_;
  std::vector<double> scratch_;
  std::mutex mutex_;
};

}  // namespace nlsw::detail

#endif
