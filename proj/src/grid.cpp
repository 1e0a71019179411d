#include "nlsw/grid.hpp"

#include <cmath>
#include <numbers>

#include "transform.hpp"

namespace nlsw {

Grid2D::Grid2D(double x_left, double y_left, double extent_x, double extent_y,
               int resolution)
    : x_left_(x_left),
      y_left_(y_left),
      extent_x_(extent_x),
      extent_y_(extent_y),
      n_(resolution) {
  require(extent_x_ > 0.0 && extent_y_ > 0.0, ErrorCode::InvalidArgument,
          "grid: domain extents must be positive");
  require(n_ >= 4, ErrorCode::InvalidArgument,
          "grid: resolution N must be at least 4");
  require(n_ % 2 == 0, ErrorCode::InvalidArgument,
          "grid: resolution N must be even");
  require(std::isfinite(x_left_) && std::isfinite(y_left_) &&
              std::isfinite(extent_x_) && std::isfinite(extent_y_),
          ErrorCode::InvalidArgument, "grid: corners/extents must be finite");

  h1_ = extent_x_ / n_;
  h2_ = extent_y_ / n_;

  const int m = n_ - 1;
  mu_.resize(m);
  nu_.resize(m);
  for (int p = 1; p <= m; ++p)
    mu_[p - 1] = p * std::numbers::pi / extent_x_;
  for (int q = 1; q <= m; ++q)
    nu_[q - 1] = q * std::numbers::pi / extent_y_;

  lambda2_.resize(static_cast<std::size_t>(m) * m);
  for (int p = 1; p <= m; ++p)
    for (int q = 1; q <= m; ++q)
      lambda2_[static_cast<std::size_t>(p - 1) * m + (q - 1)] =
          mu_[p - 1] * mu_[p - 1] + nu_[q - 1] * nu_[q - 1];

  plan_ = std::make_unique<detail::DstPlan>(m);
}

Grid2D::~Grid2D() = default;

detail::DstPlan& Grid2D::dst_plan() const { return *plan_; }

std::shared_ptr<const Grid2D> make_grid(double x_left, double y_left,
                                        double extent_x, double extent_y,
                                        int resolution) {
  return std::make_shared<const Grid2D>(x_left, y_left, extent_x, extent_y,
                                        resolution);
}

}  // namespace nlsw
