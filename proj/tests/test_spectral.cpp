#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <numbers>

#include "nlsw/field.hpp"
#include "oracles.hpp"

using namespace nlsw;
using oracles::max_abs;
using oracles::max_abs_diff;

namespace {
constexpr double kPi = std::numbers::pi;

Field sine_mode(std::shared_ptr<const Grid2D> grid, int p, int q,
                Complex coeff = Complex(1.0)) {
  return Field::sample(grid, [&](double x, double y) {
    return coeff * std::sin(grid->mu(p) * (x - grid->x_left())) *
           std::sin(grid->nu(q) * (y - grid->y_left()));
  });
}
}  // namespace

TEST_CASE("grid tabulates frequencies, mesh sizes and eigenvalues") {
  auto g = make_grid(-8.0, -8.0, 16.0, 16.0, 4);
  CHECK(g->h1() == doctest::Approx(4.0));
  CHECK(g->mu(1) == doctest::Approx(kPi / 16.0));
  CHECK(g->mu(2) == doctest::Approx(2.0 * kPi / 16.0));
  CHECK(g->mu(3) == doctest::Approx(3.0 * kPi / 16.0));

  auto gp = make_grid(0.0, 0.0, kPi, kPi, 8);
  CHECK(gp->lambda2(1, 1) == doctest::Approx(2.0).epsilon(1e-14));

  // Rectangular extents: lambda2(3,5) on (0,1) x (0,2).
  auto gr = make_grid(0.0, 0.0, 1.0, 2.0, 16);
  const long double expected =
      9.0L * kPi * kPi + 25.0L * kPi * kPi / 4.0L;
  CHECK(std::abs(gr->lambda2(3, 5) - static_cast<double>(expected)) <=
        1e-12 * static_cast<double>(expected));

  for (int p = 1; p < gr->n(); ++p)
    for (int q = 1; q < gr->n(); ++q) CHECK(gr->lambda2(p, q) > 0.0);
}

TEST_CASE("grid rejects bad resolutions and extents") {
  CHECK_THROWS_AS(make_grid(0, 0, 1, 1, 7), Error);
  CHECK_THROWS_AS(make_grid(0, 0, 1, 1, 2), Error);
  CHECK_THROWS_AS(make_grid(0, 0, -1, 1, 8), Error);
  CHECK_THROWS_AS(make_grid(0, 0, 1, 0, 8), Error);
}

TEST_CASE("forward transform matches the basis-coefficient normalization") {
  auto g = make_grid(-2.0, 1.0, 5.0, 3.0, 8);
  Field f = sine_mode(g, 1, 1);
  Field fh = f.dst_forward();
  CHECK(std::abs(fh(0, 0) - Complex(1.0)) <= 1e-13);
  double off = 0.0;
  for (int a = 0; a < g->interior(); ++a)
    for (int b = 0; b < g->interior(); ++b)
      if (a != 0 || b != 0) off = std::max(off, std::abs(fh(a, b)));
  CHECK(off <= 1e-13);

  Field z = Field::zeros(g, Repr::Physical);
  CHECK(max_abs(z.dst_forward()) == 0.0);
}

TEST_CASE("transforms agree with the direct double-sum oracle") {
  auto g = make_grid(0.3, -0.7, 2.1, 1.4, 8);
  for (std::uint64_t seed : {11u, 12u, 13u}) {
    Field f = oracles::random_field(g, Repr::Physical, seed);
    Field fft = f.dst_forward();
    Field direct = oracles::dst_forward_direct(f);
    CHECK(max_abs_diff(fft, direct) <= 1e-13 * max_abs(direct));

    Field fh = oracles::random_field(g, Repr::Spectral, seed + 100);
    Field inv_fft = fh.dst_inverse();
    Field inv_direct = oracles::dst_inverse_direct(fh);
    CHECK(max_abs_diff(inv_fft, inv_direct) <= 1e-13 * max_abs(inv_direct));
  }
}

TEST_CASE("inverse reproduces a single mode and inverts the forward map") {
  auto g = make_grid(0.0, 0.0, kPi, kPi, 8);
  Field fh = Field::zeros(g, Repr::Spectral);
  fh(0, 0) = Complex(1.0);
  CHECK(max_abs_diff(fh.dst_inverse(), sine_mode(g, 1, 1)) <= 1e-13);

  // Property: round trip over random fields at several resolutions.
  int cases = 0;
  for (int n : {8, 16, 32}) {
    auto grid = make_grid(-1.0, 2.0, 3.0, 2.5, n);
    for (int k = 0; k < 334; ++k) {
      Field f = oracles::random_field(grid, Repr::Physical, 1000 + cases++);
      CHECK(max_abs_diff(f.dst_forward().dst_inverse(), f) <=
            1e-12 * max_abs(f));
    }
  }
  CHECK(cases == 1002);
}

TEST_CASE("transform rejects representation mismatches") {
  auto g = make_grid(0.0, 0.0, 1.0, 1.0, 8);
  Field f = Field::zeros(g, Repr::Physical);
  CHECK_THROWS_AS((void)f.dst_inverse(), Error);
  Field fh = Field::zeros(g, Repr::Spectral);
  CHECK_THROWS_AS((void)fh.dst_forward(), Error);
}

TEST_CASE("laplacian is the spectral eigenvalue multiplier") {
  auto g = make_grid(0.0, 0.0, kPi, kPi, 32);
  Field f = sine_mode(g, 1, 1);
  Field lf = laplacian(f);
  Field expected = f;
  expected *= Complex(-2.0);
  CHECK(max_abs_diff(lf, expected) <= 1e-12);

  CHECK(max_abs(laplacian(Field::zeros(g, Repr::Physical))) == 0.0);

  // sin(2x) sin(3y) is an eigenfunction with eigenvalue -(4 + 9).
  Field f23 = sine_mode(g, 2, 3);
  Field lf23 = laplacian(f23);
  Field expected23 = f23;
  expected23 *= Complex(-13.0);
  CHECK(max_abs_diff(lf23, expected23) <= 1e-11);

  // Output repr follows input repr.
  CHECK(laplacian(f.dst_forward()).repr() == Repr::Spectral);
}

TEST_CASE("laplacian is self-adjoint and negative semidefinite") {
  auto g = make_grid(-1.0, -1.0, 2.0, 2.0, 16);
  for (std::uint64_t seed : {21u, 22u, 23u, 24u}) {
    Field f = oracles::random_field(g, Repr::Physical, seed);
    Field h = oracles::random_field(g, Repr::Physical, seed + 50);
    const Complex a = inner_l2(laplacian(f), h);
    const Complex b = inner_l2(f, laplacian(h));
    CHECK(std::abs(a - b) <= 1e-12 * (norm_l2(f) * norm_l2(h) + 1.0));

    Field neg = laplacian(f);
    neg *= Complex(-1.0);
    CHECK(inner_l2(neg, f).real() >= 0.0);
  }
}

TEST_CASE("discrete inner product and Parseval identity") {
  auto g = make_grid(0.0, 0.0, 1.0, 1.0, 4);
  Field ones = Field::sample(g, [](double, double) { return Complex(1.0); });
  CHECK(inner_l2(ones, ones).real() == doctest::Approx(9.0 / 16.0));
  CHECK(inner_l2(ones, ones).imag() == doctest::Approx(0.0));

  auto g2 = make_grid(0.5, -0.5, 2.0, 3.0, 16);
  for (std::uint64_t seed : {31u, 32u}) {
    Field f = oracles::random_field(g2, Repr::Physical, seed);
    Field h = oracles::random_field(g2, Repr::Physical, seed + 5);
    CHECK(inner_l2(f, f).real() >= 0.0);
    CHECK(inner_l2(f, f).imag() == doctest::Approx(0.0));
    const Complex phys = inner_l2(f, h);
    const Complex spec = inner_l2_spectral(f.dst_forward(), h.dst_forward());
    CHECK(std::abs(phys - spec) <= 1e-12 * std::abs(phys));
  }

  auto g3 = make_grid(0.0, 0.0, 1.0, 1.0, 8);
  Field other = Field::zeros(g3, Repr::Physical);
  CHECK_THROWS_AS((void)inner_l2(ones, other), Error);
}

TEST_CASE("norms: zero field, single mode, definitional identity") {
  auto g = make_grid(0.0, 0.0, kPi, kPi, 16);
  const FieldNorms zero = norms(Field::zeros(g, Repr::Physical));
  CHECK(zero.l2 == 0.0);
  CHECK(zero.linf == 0.0);
  CHECK(zero.semi_h1 == 0.0);
  CHECK(zero.semi_h2 == 0.0);

  // |f|_{N,1}^2 for the (1,1) mode: lambda2 * (XY/4) = 2 * pi^2/4, by both
  // the frequency-sum route and the inner-product route.
  Field f = sine_mode(g, 1, 1);
  const double freq_route = semi_h1(f) * semi_h1(f);
  Field neg = laplacian(f);
  neg *= Complex(-1.0);
  const double ip_route = inner_l2(neg, f).real();
  const double expected = 2.0 * kPi * kPi / 4.0;
  CHECK(std::abs(freq_route - expected) <= 1e-12 * expected);
  CHECK(std::abs(freq_route - ip_route) <= 1e-12 * expected);

  for (std::uint64_t seed : {41u, 42u}) {
    Field r = oracles::random_field(g, Repr::Physical, seed);
    Field negr = laplacian(r);
    negr *= Complex(-1.0);
    const double lhs = semi_h1(r) * semi_h1(r);
    const double rhs = inner_l2(negr, r).real();
    CHECK(std::abs(lhs - rhs) <= 1e-11 * std::abs(rhs));
  }
}

TEST_CASE("lp norm requires p >= 1") {
  auto g = make_grid(0.0, 0.0, 1.0, 1.0, 8);
  Field f = oracles::random_field(g, Repr::Physical, 5);
  CHECK_THROWS_AS((void)norm_lp(f, 0.5), Error);
  CHECK(norm_lp(f, 2.0) == doctest::Approx(norm_l2(f)));
}

TEST_CASE("field debug dump round-trips through CSV") {
  auto g = make_grid(-1.0, 0.0, 2.0, 2.0, 8);
  Field f = oracles::random_field(g, Repr::Physical, 77);
  const std::string path =
      (std::filesystem::temp_directory_path() / "nlsw_field_dump.csv").string();
  field_dump_csv(f, path);
  Field back = field_load_csv(g, Repr::Physical, path);
  CHECK(max_abs_diff(f, back) == 0.0);  // 17 significant digits round-trip
  std::filesystem::remove(path);
}
