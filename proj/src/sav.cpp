#include "nlsw/sav.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace nlsw {

void ProblemParams::validate() const {
  require(grid != nullptr, ErrorCode::InvalidArgument,
          "params: grid must be set");
  require(alpha != 0.0 && std::isfinite(alpha), ErrorCode::InvalidArgument,
          "params: alpha must be a nonzero real");
  require(beta != 0.0 && std::isfinite(beta), ErrorCode::InvalidArgument,
          "params: beta must be a nonzero real");
  require(c0 > 0.0 && std::isfinite(c0), ErrorCode::InvalidArgument,
          "params: C0 must be positive");
}

Field g_fn(const Field& u) {
  require(u.repr() == Repr::Physical, ErrorCode::ReprMismatch,
          "g_fn expects a physical field");
  Field out = u;
  for (Complex& z : out.data()) z *= std::norm(z);
  return out;
}

double H_N(const Field& u, double c0) {
  require(u.repr() == Repr::Physical, ErrorCode::ReprMismatch,
          "H_N expects a physical field");
  double acc = 0.0;
  for (const Complex& z : u.data()) {
    const double a = std::norm(z);
    acc += 0.5 * a * a;
  }
  return u.grid().h1() * u.grid().h2() * acc + c0;
}

Field f_N(const Field& u, double c0) {
  Field g = g_fn(u);
  const double inv_sqrt_h = 1.0 / std::sqrt(H_N(u, c0));
  for (Complex& z : g.data()) z *= inv_sqrt_h;
  return g;
}

double r_init(const Field& u0, double c0) { return std::sqrt(H_N(u0, c0)); }

double discrete_energy(const SavState& state, const ProblemParams& params) {
  const double h1 = semi_h1(state.u);
  const double vl2 = norm_l2(state.v);
  return h1 * h1 + vl2 * vl2 + params.beta * state.r * state.r -
         params.beta * params.c0;
}

SavState init_state(const ProblemParams& params,
                    const std::function<Complex(double, double)>& u0fn,
                    const std::function<Complex(double, double)>& u1fn) {
  params.validate();
  Field u = Field::sample(params.grid, u0fn);
  Field v = Field::sample(params.grid, u1fn);
  require(u.all_finite() && v.all_finite(), ErrorCode::NonFinite,
          "init_state: initial data samples are not finite");
  const double r = r_init(u, params.c0);
  return SavState{std::move(u), std::move(v), r, 0.0};
}

void save_state_csv(const SavState& state, long long step_index,
                    const std::string& path) {
  const Field u = state.u.to(Repr::Physical);
  const Field v = state.v.to(Repr::Physical);
  std::FILE* fp = std::fopen(path.c_str(), "w");
  require(fp != nullptr, ErrorCode::Io, "cannot open " + path + " for write");
  std::fprintf(fp, "n,%lld\n", step_index);
  std::fprintf(fp, "t,%.17g\n", state.t);
  std::fprintf(fp, "r,%.17g\n", state.r);
  std::fprintf(fp, "j,k,re_u,im_u,re_v,im_v\n");
  const int m = u.extent();
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      std::fprintf(fp, "%d,%d,%.17g,%.17g,%.17g,%.17g\n", a + 1, b + 1,
                   u(a, b).real(), u(a, b).imag(), v(a, b).real(),
                   v(a, b).imag());
  std::fclose(fp);
}

LoadedState load_state_csv(std::shared_ptr<const Grid2D> grid,
                           const std::string& path) {
  std::ifstream in(path);
  require(in.good(), ErrorCode::Io, "cannot open " + path + " for read");
  std::string line;
  long long n = 0;
  double t = 0.0, r = 0.0;
  require(std::getline(in, line) &&
              std::sscanf(line.c_str(), "n,%lld", &n) == 1,
          ErrorCode::Io, "checkpoint " + path + ": bad step-index line");
  require(std::getline(in, line) && std::sscanf(line.c_str(), "t,%lg", &t) == 1,
          ErrorCode::Io, "checkpoint " + path + ": bad time line");
  require(std::getline(in, line) && std::sscanf(line.c_str(), "r,%lg", &r) == 1,
          ErrorCode::Io, "checkpoint " + path + ": bad r line");
  std::getline(in, line);  // column header

  Field u(grid, Repr::Physical);
  Field v(grid, Repr::Physical);
  const int m = grid->interior();
  std::size_t count = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    int j, k;
    double ru, iu, rv, iv;
    require(std::sscanf(line.c_str(), "%d,%d,%lg,%lg,%lg,%lg", &j, &k, &ru,
                        &iu, &rv, &iv) == 6,
            ErrorCode::Io, "checkpoint " + path + ": malformed state row");
    require(j >= 1 && j <= m && k >= 1 && k <= m, ErrorCode::Io,
            "checkpoint " + path + ": row index out of range");
    u(j - 1, k - 1) = Complex(ru, iu);
    v(j - 1, k - 1) = Complex(rv, iv);
    ++count;
  }
  require(count == grid->size(), ErrorCode::Io,
          "checkpoint " + path + " has the wrong number of rows");
  return LoadedState{SavState{std::move(u), std::move(v), r, t}, n};
}

}  // namespace nlsw
