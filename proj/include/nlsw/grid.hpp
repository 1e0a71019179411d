#ifndef NLSW_GRID_HPP
#define NLSW_GRID_HPP

#include <memory>
#include <vector>

#include "nlsw/errors.hpp"

namespace nlsw {

namespace detail {
class DstPlan;
}

/// Uniform tensor grid on (xL, xL+X) x (yL, yL+Y) with homogeneous Dirichlet
/// boundaries. Only the (N-1)^2 interior nodes carry data; the sine
/// frequencies mu_p = p*pi/X, nu_q = q*pi/Y and the Laplacian eigenvalue
/// magnitudes lambda2[p][q] = mu_p^2 + nu_q^2 are tabulated once.
class Grid2D {
public:
  Grid2D(double x_left, double y_left, double extent_x, double extent_y,
         int resolution);
  ~Grid2D();

  Grid2D(const Grid2D&) = delete;
  Grid2D& operator=(const Grid2D&) = delete;

  int n() const { return n_; }
  int interior() const { return n_ - 1; }
  std::size_t size() const {
    return static_cast<std::size_t>(n_ - 1) * (n_ - 1);
  }

  double x_left() const { return x_left_; }
  double y_left() const { return y_left_; }
  double extent_x() const { return extent_x_; }
  double extent_y() const { return extent_y_; }
  double h1() const { return h1_; }
  double h2() const { return h2_; }
  double area() const { return extent_x_ * extent_y_; }

  /// Interior node coordinates; j, k are 1-based (1 <= j,k <= N-1).
  double node_x(int j) const { return x_left_ + j * h1_; }
  double node_y(int k) const { return y_left_ + k * h2_; }

  /// Sine frequencies, 1-based mode indices (1 <= p,q <= N-1).
  double mu(int p) const { return mu_[p - 1]; }
  double nu(int q) const { return nu_[q - 1]; }
  double lambda2(int p, int q) const {
    return lambda2_[static_cast<std::size_t>(p - 1) * (n_ - 1) + (q - 1)];
  }
  /// Flat (row-major, 0-based) eigenvalue table aligned with Field storage.
  const std::vector<double>& lambda2_flat() const { return lambda2_; }

  detail::DstPlan& dst_plan() const;

private:
  double x_left_, y_left_, extent_x_, extent_y_;
  int n_;
  double h1_, h2_;
  std::vector<double> mu_, nu_, lambda2_;
  mutable std::unique_ptr<detail::DstPlan> plan_;
};

std::shared_ptr<const Grid2D> make_grid(double x_left, double y_left,
                                        double extent_x, double extent_y,
                                        int resolution);

}  // namespace nlsw

#endif
