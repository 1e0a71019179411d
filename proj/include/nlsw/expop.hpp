#ifndef NLSW_EXPOP_HPP
#define NLSW_EXPOP_HPP

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "nlsw/field.hpp"

namespace nlsw {

/*
 Block elements of exp(t*A_N) for A_N = [[0, I], [Lap_N, -i*alpha*I]].

 A_N is diagonal in the sine basis: per mode (p,q) it reduces to the 2x2
 matrix [[0, 1], [-lambda^2, -i*alpha]], whose exponential has the closed
 form (with S = sqrt(alpha^2 + 4*lambda^2), w± = -(alpha ± S)/2, w = w+ - w-
 = -S, and E± = exp(i*w±*t)):

     e11 = (w+ E- - w- E+)/w        e12 = (E+ - E-)/(i w)
     e21 = -lambda^2 * e12          e22 = (w+ E+ - w- E-)/w

 w is never zero (w = -S <= -|alpha| < 0), so no degenerate branch exists.
 Applying a block to a field is an elementwise multiply in spectral space.
*/

enum class ExpBlock { E11, E12, E21, E22 };

/// Per-mode eigenvalues (e11, e12, e21, e22) of
/// exp(t * [[0, 1], [-lambda2, -i*alpha]]).
std::array<Complex, 4> exp_block_eigenvalues(double alpha, double lambda2,
                                             double t);

class ExpElement {
public:
  ExpElement(std::shared_ptr<const Grid2D> grid, double alpha, ExpBlock block,
             double t);

  ExpBlock block() const { return block_; }
  double t() const { return t_; }
  double alpha() const { return alpha_; }
  const std::shared_ptr<const Grid2D>& grid_ptr() const { return grid_; }

  /// Eigenvalue for mode (p,q), 1-based indices.
  Complex eig(int p, int q) const {
    return eig_[static_cast<std::size_t>(p - 1) * (grid_->interior()) +
                (q - 1)];
  }
  const std::vector<Complex>& eig_flat() const { return eig_; }

  /// Spectral elementwise multiply; output repr equals input repr.
  Field apply(const Field& f) const;
  /// dst += scale * (this applied to spectral field fhat)
  void accumulate(Complex scale, const Field& fhat, Field& dst) const;

private:
  std::shared_ptr<const Grid2D> grid_;
  double alpha_;
  ExpBlock block_;
  double t_;
  std::vector<Complex> eig_;
};

using ExpElementPtr = std::shared_ptr<const ExpElement>;

ExpElementPtr build_element(std::shared_ptr<const Grid2D> grid, double alpha,
                            ExpBlock block, double t);

/// Cache of ExpElements for one (grid, alpha) pair, keyed by block and the
/// exact binary representation of t. Concurrent reads, exclusive insertion.
class ExpTable {
public:
  ExpTable(std::shared_ptr<const Grid2D> grid, double alpha);

  ExpElementPtr get(ExpBlock block, double t);
  double alpha() const { return alpha_; }
  const std::shared_ptr<const Grid2D>& grid_ptr() const { return grid_; }

private:
  std::shared_ptr<const Grid2D> grid_;
  double alpha_;
  std::map<std::pair<int, std::uint64_t>, ExpElementPtr> cache_;
  std::mutex mutex_;
};

}  // namespace nlsw

#endif
