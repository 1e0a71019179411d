#include "nlsw/expop.hpp"

#include <bit>
#include <cmath>

namespace nlsw {

std::array<Complex, 4> exp_block_eigenvalues(double alpha, double lambda2,
                                             double t) {
  const double s = std::sqrt(alpha * alpha + 4.0 * lambda2);
  const double wp = -0.5 * (alpha + s);
  const double wm = -0.5 * (alpha - s);
  const double w = wp - wm;  // = -s, never zero
  const Complex ep = std::polar(1.0, wp * t);
  const Complex em = std::polar(1.0, wm * t);
  const Complex e12 = (ep - em) / Complex(0.0, w);
  return {(wp * em - wm * ep) / w, e12, -lambda2 * e12,
          (wp * ep - wm * em) / w};
}

ExpElement::ExpElement(std::shared_ptr<const Grid2D> grid, double alpha,
                       ExpBlock block, double t)
    : grid_(std::move(grid)), alpha_(alpha), block_(block), t_(t) {
  require(alpha_ != 0.0, ErrorCode::InvalidArgument,
          "exp element: alpha must be nonzero");
  require(std::isfinite(t_), ErrorCode::InvalidArgument,
          "exp element: time must be finite");

  const std::vector<double>& lam2 = grid_->lambda2_flat();
  eig_.resize(lam2.size());
  const std::size_t which = static_cast<std::size_t>(block_);
  for (std::size_t i = 0; i < lam2.size(); ++i)
    eig_[i] = exp_block_eigenvalues(alpha_, lam2[i], t_)[which];
}

Field ExpElement::apply(const Field& f) const {
  require(f.grid_ptr().get() == grid_.get(), ErrorCode::GridMismatch,
          "exp element applied to a field on a different grid");
  const Repr repr = f.repr();
  Field fhat = f.to(Repr::Spectral);
  for (std::size_t i = 0; i < eig_.size(); ++i) fhat.data()[i] *= eig_[i];
  return fhat.to(repr);
}

void ExpElement::accumulate(Complex scale, const Field& fhat,
                            Field& dst) const {
  require(fhat.grid_ptr().get() == grid_.get() &&
              dst.grid_ptr().get() == grid_.get(),
          ErrorCode::GridMismatch, "exp element accumulate: grid mismatch");
  require(fhat.repr() == Repr::Spectral && dst.repr() == Repr::Spectral,
          ErrorCode::ReprMismatch,
          "exp element accumulate expects spectral fields");
  for (std::size_t i = 0; i < eig_.size(); ++i)
    dst.data()[i] += scale * eig_[i] * fhat.data()[i];
}

ExpElementPtr build_element(std::shared_ptr<const Grid2D> grid, double alpha,
                            ExpBlock block, double t) {
  return std::make_shared<const ExpElement>(std::move(grid), alpha, block, t);
}

ExpTable::ExpTable(std::shared_ptr<const Grid2D> grid, double alpha)
    : grid_(std::move(grid)), alpha_(alpha) {
  require(alpha_ != 0.0, ErrorCode::InvalidArgument,
          "exp table: alpha must be nonzero");
}

ExpElementPtr ExpTable::get(ExpBlock block, double t) {
  const auto key = std::make_pair(static_cast<int>(block),
                                  std::bit_cast<std::uint64_t>(t));
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  ExpElementPtr elem = build_element(grid_, alpha_, block, t);
  cache_.emplace(key, elem);
  return elem;
}

}  // namespace nlsw
