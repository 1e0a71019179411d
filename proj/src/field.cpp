#include "nlsw/field.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "transform.hpp"

namespace nlsw {

Field::Field(std::shared_ptr<const Grid2D> grid, Repr repr)
    : grid_(std::move(grid)), repr_(repr), data_(grid_->size()) {}

Field Field::zeros(std::shared_ptr<const Grid2D> grid, Repr repr) {
  return Field(std::move(grid), repr);
}

Field Field::sample(std::shared_ptr<const Grid2D> grid,
                    const std::function<Complex(double, double)>& fn) {
  Field f(grid, Repr::Physical);
  const int m = grid->interior();
  for (int a = 0; a < m; ++a) {
    const double x = grid->node_x(a + 1);
    for (int b = 0; b < m; ++b) f(a, b) = fn(x, grid->node_y(b + 1));
  }
  return f;
}

Field Field::dst_forward() const {
  require(repr_ == Repr::Physical, ErrorCode::ReprMismatch,
          "dst_forward expects a physical field");
  Field out(grid_, Repr::Spectral);
  const double n = grid_->n();
  grid_->dst_plan().execute(data_.data(), out.data_.data(), 1.0 / (n * n));
  return out;
}

Field Field::dst_inverse() const {
  require(repr_ == Repr::Spectral, ErrorCode::ReprMismatch,
          "dst_inverse expects a spectral field");
  Field out(grid_, Repr::Physical);
  grid_->dst_plan().execute(data_.data(), out.data_.data(), 0.25);
  return out;
}

Field Field::to(Repr target) const {
  if (repr_ == target) return *this;
  return target == Repr::Spectral ? dst_forward() : dst_inverse();
}

bool Field::all_finite() const {
  for (const Complex& z : data_)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

void Field::check_compatible(const Field& other) const {
  require(grid_.get() == other.grid_.get(), ErrorCode::GridMismatch,
          "field operation across different grids");
  require(repr_ == other.repr_, ErrorCode::ReprMismatch,
          "field operation across different representations");
}

Field& Field::operator+=(const Field& other) {
  check_compatible(other);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

Field& Field::operator-=(const Field& other) {
  check_compatible(other);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

Field& Field::operator*=(Complex scale) {
  for (Complex& z : data_) z *= scale;
  return *this;
}

Field& Field::axpy(Complex scale, const Field& other) {
  check_compatible(other);
  for (std::size_t i = 0; i < data_.size(); ++i)
    data_[i] += scale * other.data_[i];
  return *this;
}

Field laplacian(const Field& f) {
  const Repr repr = f.repr();
  Field fhat = f.to(Repr::Spectral);
  const std::vector<double>& lam2 = f.grid().lambda2_flat();
  for (std::size_t i = 0; i < fhat.data().size(); ++i)
    fhat.data()[i] *= -lam2[i];
  return fhat.to(repr);
}

Complex inner_l2(const Field& f, const Field& g) {
  require(f.grid_ptr().get() == g.grid_ptr().get(), ErrorCode::GridMismatch,
          "inner_l2: fields live on different grids");
  require(f.repr() == Repr::Physical && g.repr() == Repr::Physical,
          ErrorCode::ReprMismatch, "inner_l2 expects physical fields");
  Complex acc(0.0, 0.0);
  for (std::size_t i = 0; i < f.data().size(); ++i)
    acc += f.data()[i] * std::conj(g.data()[i]);
  return f.grid().h1() * f.grid().h2() * acc;
}

Complex inner_l2_spectral(const Field& fhat, const Field& ghat) {
  require(fhat.grid_ptr().get() == ghat.grid_ptr().get(),
          ErrorCode::GridMismatch,
          "inner_l2_spectral: fields live on different grids");
  require(fhat.repr() == Repr::Spectral && ghat.repr() == Repr::Spectral,
          ErrorCode::ReprMismatch, "inner_l2_spectral expects spectral fields");
  Complex acc(0.0, 0.0);
  for (std::size_t i = 0; i < fhat.data().size(); ++i)
    acc += fhat.data()[i] * std::conj(ghat.data()[i]);
  return 0.25 * fhat.grid().area() * acc;
}

FieldNorms norms(const Field& f) {
  const Field phys = f.to(Repr::Physical);
  const Field spec = f.to(Repr::Spectral);
  const std::vector<double>& lam2 = f.grid().lambda2_flat();

  double sum2 = 0.0, sup = 0.0, h1sum = 0.0, h2sum = 0.0;
  for (const Complex& z : phys.data()) {
    const double a = std::norm(z);
    sum2 += a;
    sup = std::max(sup, a);
  }
  for (std::size_t i = 0; i < spec.data().size(); ++i) {
    const double c = std::norm(spec.data()[i]);
    h1sum += lam2[i] * c;
    h2sum += lam2[i] * lam2[i] * c;
  }
  const double quarter_area = 0.25 * f.grid().area();
  return FieldNorms{std::sqrt(f.grid().h1() * f.grid().h2() * sum2),
                    std::sqrt(sup), std::sqrt(quarter_area * h1sum),
                    std::sqrt(quarter_area * h2sum)};
}

double norm_l2(const Field& f) {
  if (f.repr() == Repr::Spectral) {
    double acc = 0.0;
    for (const Complex& z : f.data()) acc += std::norm(z);
    return std::sqrt(0.25 * f.grid().area() * acc);
  }
  double acc = 0.0;
  for (const Complex& z : f.data()) acc += std::norm(z);
  return std::sqrt(f.grid().h1() * f.grid().h2() * acc);
}

double norm_linf(const Field& f) {
  const Field phys = f.to(Repr::Physical);
  double sup = 0.0;
  for (const Complex& z : phys.data()) sup = std::max(sup, std::norm(z));
  return std::sqrt(sup);
}

double norm_lp(const Field& f, double p) {
  require(p >= 1.0, ErrorCode::InvalidArgument, "norm_lp: requires p >= 1");
  const Field phys = f.to(Repr::Physical);
  double acc = 0.0;
  for (const Complex& z : phys.data()) acc += std::pow(std::abs(z), p);
  return std::pow(f.grid().h1() * f.grid().h2() * acc, 1.0 / p);
}

double semi_h1(const Field& f) { return norms(f).semi_h1; }
double semi_h2(const Field& f) { return norms(f).semi_h2; }

void field_dump_csv(const Field& f, const std::string& path) {
  std::FILE* fp = std::fopen(path.c_str(), "w");
  require(fp != nullptr, ErrorCode::Io, "cannot open " + path + " for write");
  std::fprintf(fp, "j,k,re,im\n");
  const int m = f.extent();
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      std::fprintf(fp, "%d,%d,%.17g,%.17g\n", a + 1, b + 1, f(a, b).real(),
                   f(a, b).imag());
  std::fclose(fp);
}

Field field_load_csv(std::shared_ptr<const Grid2D> grid, Repr repr,
                     const std::string& path) {
  std::ifstream in(path);
  require(in.good(), ErrorCode::Io, "cannot open " + path + " for read");
  std::string line;
  std::getline(in, line);  // header
  Field f(grid, repr);
  const int m = grid->interior();
  std::size_t count = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    int j, k;
    double re, im;
    require(std::sscanf(line.c_str(), "%d,%d,%lg,%lg", &j, &k, &re, &im) == 4,
            ErrorCode::Io, "malformed field row in " + path);
    require(j >= 1 && j <= m && k >= 1 && k <= m, ErrorCode::Io,
            "field row index out of range in " + path);
    f(j - 1, k - 1) = Complex(re, im);
    ++count;
  }
  require(count == grid->size(), ErrorCode::Io,
          "field dump " + path + " has the wrong number of rows");
  return f;
}

}  // namespace nlsw
