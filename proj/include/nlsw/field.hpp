#ifndef NLSW_FIELD_HPP
#define NLSW_FIELD_HPP

#include <complex>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "nlsw/grid.hpp"

namespace nlsw {

using Complex = std::complex<double>;

enum class Repr { Physical, Spectral };

/// Complex grid function on the interior nodes of a Grid2D (boundary values
/// are identically zero and not stored). In Physical repr entry (a,b) is the
/// value at node (j,k) = (a+1,b+1); in Spectral repr it is the sine-basis
/// coefficient of mode (p,q) = (a+1,b+1) under the 4/N^2 forward
/// normalization, so coefficients are basis-expansion coefficients.
class Field {
public:
  Field(std::shared_ptr<const Grid2D> grid, Repr repr);

  static Field zeros(std::shared_ptr<const Grid2D> grid, Repr repr);
  /// Pointwise samples of fn(x, y) at the interior nodes.
  static Field sample(std::shared_ptr<const Grid2D> grid,
                      const std::function<Complex(double, double)>& fn);

  const std::shared_ptr<const Grid2D>& grid_ptr() const { return grid_; }
  const Grid2D& grid() const { return *grid_; }
  Repr repr() const { return repr_; }
  int extent() const { return grid_->interior(); }
  std::size_t size() const { return data_.size(); }

  Complex& operator()(int a, int b) {
    return data_[static_cast<std::size_t>(a) * extent() + b];
  }
  Complex operator()(int a, int b) const {
    return data_[static_cast<std::size_t>(a) * extent() + b];
  }
  std::vector<Complex>& data() { return data_; }
  const std::vector<Complex>& data() const { return data_; }

  /// 2D discrete sine transform, u_hat = S u (Physical -> Spectral).
  Field dst_forward() const;
  /// Inverse transform, u = S^{-1} u_hat (Spectral -> Physical).
  Field dst_inverse() const;
  /// Convert to the requested repr (no-op copy if already there).
  Field to(Repr target) const;

  bool all_finite() const;

  Field& operator+=(const Field& other);
  Field& operator-=(const Field& other);
  Field& operator*=(Complex scale);
  /// this += scale * other
  Field& axpy(Complex scale, const Field& other);

  friend Field operator+(Field lhs, const Field& rhs) { return lhs += rhs; }
  friend Field operator-(Field lhs, const Field& rhs) { return lhs -= rhs; }
  friend Field operator*(Complex scale, Field f) { return f *= scale; }
  friend Field operator*(double scale, Field f) { return f *= Complex(scale); }

private:
  void check_compatible(const Field& other) const;

  std::shared_ptr<const Grid2D> grid_;
  Repr repr_;
  std::vector<Complex> data_;
};

/// Spectral multiplication by -lambda2[p][q]; output repr equals input repr.
Field laplacian(const Field& f);

/// (f, g)_{l2} = h1 h2 sum f_jk conj(g_jk). Both fields physical.
Complex inner_l2(const Field& f, const Field& g);

/// Parseval form of the discrete inner product, (XY/4) sum fh conj(gh).
/// Both fields spectral.
Complex inner_l2_spectral(const Field& fhat, const Field& ghat);

struct FieldNorms {
  double l2;
  double linf;
  double semi_h1;
  double semi_h2;
};

/// Discrete l2 / linf norms and the sine pseudo-spectral semi H1/H2 norms.
FieldNorms norms(const Field& f);

double norm_l2(const Field& f);
double norm_linf(const Field& f);
/// (h1 h2 sum |f|^p)^(1/p); rejects p < 1.
double norm_lp(const Field& f, double p);
double semi_h1(const Field& f);
double semi_h2(const Field& f);

/// Debug dump: rows of (j,k,Re,Im) with 17 significant digits, 1-based
/// interior indices (mode indices for spectral fields).
void field_dump_csv(const Field& f, const std::string& path);
Field field_load_csv(std::shared_ptr<const Grid2D> grid, Repr repr,
                     const std::string& path);

}  // namespace nlsw

#endif
