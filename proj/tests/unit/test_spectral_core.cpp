#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "fracshear/errors.hpp"
#include "fracshear/fft.hpp"
#include "fracshear/field_io.hpp"
#include "fracshear/spectral_ops.hpp"
#include "test_support.hpp"

using namespace fracshear;

namespace {

SpectralField2D mode(const TorusGrid& g, int k, int l) {
  SpectralField2D f(g);
  f.at(k, l) = 1.0;
  return f;
}

}  // namespace

TEST_CASE("grid construction and wavenumber layout") {
  TorusGrid g(16, 8);
  CHECK(g.kx(0) == 0);
  CHECK(g.kx(7) == 7);
  CHECK(g.kx(8) == -8);
  CHECK(g.kx(15) == -1);
  CHECK(g.index_x(-3) == 13);
  CHECK(g.x(0) == doctest::Approx(-M_PI));
  CHECK(g.kx_cut() == 5);
  CHECK_THROWS_AS(TorusGrid(12, 16), ParameterError);
  CHECK_THROWS_AS(TorusGrid(4, 16), ParameterError);
}

TEST_CASE("frac_laplacian examples") {
  TorusGrid g(16, 16);
  SpectralField2D c(g);
  c(0, 0) = 3.0;
  CHECK(fstest::max_abs(frac_laplacian(c, 1.3)) == 0.0);

  const auto f = mode(g, 2, 1);
  const auto lf = frac_laplacian(f, 1.0);
  CHECK(lf.at(2, 1).real() == doctest::Approx(std::sqrt(5.0)).epsilon(1e-15));
  CHECK(fstest::max_abs(lf - std::sqrt(5.0) * f) < 1e-15);

  CHECK_THROWS_AS(frac_laplacian(f, 0.0), ParameterError);
  CHECK_THROWS_AS(frac_laplacian(f, 2.5), ParameterError);
}

TEST_CASE("frac_laplacian inverted by the negative power on mean-zero fields") {
  TorusGrid g(32, 32);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto f = fstest::random_real(g, seed);
    for (double a : {0.5, 1.5, 2.0}) {
      const auto back = frac_power(frac_laplacian(f, a), -a);
      CHECK(fstest::max_abs_diff(back, f) <= 1e-12 * fstest::max_abs(f));
    }
  }
}

TEST_CASE("frac_laplacian_1d examples") {
  SpectralField1D c(16);
  c.at(0) = 2.0;
  CHECK(std::abs(frac_laplacian_1d(c, 1.5).at(0)) == 0.0);
  SpectralField1D e(16);
  e.at(1) = 1.0;
  for (double a : {0.3, 1.0, 1.7}) CHECK(std::abs(frac_laplacian_1d(e, a).at(1) - 1.0) < 1e-15);
  SpectralField1D cos3(16);
  cos3.at(3) = 0.5;
  cos3.at(-3) = 0.5;
  const auto r = frac_laplacian_1d(cos3, 1.5);
  CHECK(r.at(3).real() == doctest::Approx(0.5 * 5.196152422706632).epsilon(1e-14));
  CHECK(r.at(-3).real() == doctest::Approx(0.5 * 5.196152422706632).epsilon(1e-14));
}

TEST_CASE("zero/nonzero projections partition the modes") {
  TorusGrid g(16, 16);
  const auto cosx_g = sample(g, [](double x, double y) { return std::cos(x) * (1.0 + std::sin(y)); });
  CHECK(l2_norm_1d(project_zero(cosx_g)) < 1e-14);
  const auto gy = sample(g, [](double, double y) { return std::exp(std::cos(y)); });
  CHECK(fstest::max_abs(project_nonzero(gy)) < 1e-14);
  const auto f = fstest::random_real(g, 42);
  const auto sum = embed_zero(project_zero(f), g) + project_nonzero(f);
  CHECK(sum.coeffs() == f.coeffs());
}

TEST_CASE("inverse Laplacian examples") {
  TorusGrid g(16, 16);
  const auto cx = sample(g, [](double x, double) { return std::cos(x); });
  CHECK(fstest::max_abs_diff(inv_laplacian_meanzero(cx), cx) < 1e-15);
  const auto m = mode(g, 1, 2);
  CHECK(fstest::max_abs_diff(inv_laplacian_meanzero(m), 0.2 * m) < 1e-16);
  SpectralField2D c(g);
  c(0, 0) = 7.0;
  CHECK(fstest::max_abs(inv_laplacian_meanzero(c)) == 0.0);
}

TEST_CASE("differentiation examples and identities") {
  TorusGrid g(16, 16);
  const auto sx = sample(g, [](double x, double) { return std::sin(x); });
  const auto [gx, gy] = grad(sx);
  CHECK(fstest::max_abs_diff(gx, sample(g, [](double x, double) { return std::cos(x); })) < 1e-14);
  CHECK(fstest::max_abs(gy) < 1e-14);

  SpectralField2D zero(g);
  const auto cy = sample(g, [](double, double y) { return std::cos(y); });
  CHECK(fstest::max_abs_diff(div(zero, cy), sample(g, [](double, double y) { return -std::sin(y); })) < 1e-14);

  SpectralField2D c(g);
  c(0, 0) = 1.0;
  CHECK(fstest::max_abs(ddx(c)) == 0.0);

  TorusGrid other(32, 16);
  CHECK_THROWS_AS(div(zero, SpectralField2D(other)), ShapeError);

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto f = fstest::random_real(g, seed);
    const auto [fx, fy] = grad(f);
    const auto lap = div(fx, fy);
    const auto ref = frac_laplacian(f, 2.0);
    CHECK(fstest::max_abs_diff(lap, -1.0 * ref) <= 1e-12 * fstest::max_abs(ref));
  }
}

TEST_CASE("norm examples") {
  TorusGrid g(16, 16);
  SpectralField2D one(g);
  one(0, 0) = 1.0;
  const auto n1 = norms(one);
  CHECK(n1.l1 == doctest::Approx(4.0 * M_PI * M_PI).epsilon(1e-14));
  CHECK(n1.l2 == doctest::Approx(2.0 * M_PI).epsilon(1e-14));
  CHECK(n1.linf == doctest::Approx(1.0).epsilon(1e-14));
  const auto sx = sample(g, [](double x, double) { return std::sin(x); });
  CHECK(l2_norm(sx) == doctest::Approx(std::sqrt(2.0) * M_PI).epsilon(1e-14));
}

TEST_CASE("Parseval: spectral L2 equals collocation quadrature on 100 random fields") {
  TorusGrid g(32, 16);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto f = fstest::random_real(g, 1000 + seed, 7);
    const auto p = to_physical(f);
    double q = 0.0;
    for (double v : p.values) q += v * v;
    q = std::sqrt(q * 4.0 * M_PI * M_PI / static_cast<double>(g.size()));
    CHECK(std::abs(l2_norm(f) - q) <= 1e-10 * q);
  }
}

TEST_CASE("round trip physical -> spectral -> physical") {
  for (std::size_t n : {8u, 16u, 64u, 128u}) {
    TorusGrid g(n, n / 2 < 8 ? 8 : n / 2);
    auto p = sample_physical(g, [](double x, double y) { return std::exp(std::sin(x) * std::cos(2.0 * y)) + x * 0.0; });
    const auto back = to_physical(to_spectral(p));
    double err = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < p.values.size(); ++i) {
      err = std::max(err, std::abs(back.values[i] - p.values[i]));
      scale = std::max(scale, std::abs(p.values[i]));
    }
    CHECK(err <= 1e-12 * scale);
  }
}

TEST_CASE("multiplier composition multiplies symbols") {
  TorusGrid g(16, 16);
  const auto f = fstest::random_real(g, 5);
  const auto a = Multiplier::frac_power(0.7), b = Multiplier::ddy();
  const auto lhs = a.apply(b.apply(f));
  const auto rhs = (a * b).apply(f);
  CHECK(fstest::max_abs_diff(lhs, rhs) <= 1e-15 * fstest::max_abs(rhs));
  // linearity
  const auto h = fstest::random_real(g, 6);
  CHECK(fstest::max_abs_diff(a.apply(f + 2.0 * h), a.apply(f) + 2.0 * a.apply(h)) < 1e-13);
}

TEST_CASE("dealias examples") {
  TorusGrid g(24 > 16 ? 32 : 16, 32);
  auto in_band = SpectralField2D(g);
  in_band.at(10, -10) = 1.0;
  CHECK(dealias(in_band).coeffs() == in_band.coeffs());
  const auto top = mode(g, 15, 0);
  CHECK(fstest::max_abs(dealias(top)) == 0.0);
  const auto f = fstest::random_real(g, 9);
  CHECK(dealias(dealias(f)).coeffs() == dealias(f).coeffs());
}

TEST_CASE("Hermitian symmetry is preserved by every operation") {
  TorusGrid g(32, 32);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto f = fstest::random_real(g, 77 + seed);
    CHECK(f.hermitian_defect() < 1e-15);
    CHECK(frac_laplacian(f, 1.3).hermitian_defect() < 1e-12);
    CHECK(frac_power(f, -0.6).hermitian_defect() < 1e-12);
    CHECK(project_zero(f).hermitian_defect() < 1e-12);
    CHECK(project_nonzero(f).hermitian_defect() < 1e-12);
    CHECK(inv_laplacian_meanzero(f).hermitian_defect() < 1e-12);
    CHECK(ddx(f).hermitian_defect() < 1e-12);
    CHECK(ddy(f).hermitian_defect() < 1e-12);
    CHECK(dealias(f).hermitian_defect() < 1e-12);
    CHECK(to_spectral(to_physical(f)).hermitian_defect() < 1e-12);
  }
}

TEST_CASE("Sobolev seminorms and inner product") {
  TorusGrid g(16, 16);
  const auto m = sample(g, [](double x, double y) { return std::cos(3.0 * x + 4.0 * y); });
  // ‖Λ^{s}cos(3x+4y)‖ = 5^s·√2·π
  CHECK(hs_seminorm(m, 0.75) == doctest::Approx(std::pow(5.0, 0.75) * std::sqrt(2.0) * M_PI).epsilon(1e-13));
  CHECK(inner_product(m, m) == doctest::Approx(2.0 * M_PI * M_PI).epsilon(1e-13));
  CHECK(h1_norm(m) == doctest::Approx(std::sqrt(26.0) * std::sqrt(2.0) * M_PI).epsilon(1e-13));
}

TEST_CASE("field serialization round trip") {
  TorusGrid g(16, 8);
  const auto f = fstest::random_real(g, 11, 3);
  const auto dir = std::filesystem::temp_directory_path() / "fracshear_io_test";
  std::filesystem::create_directories(dir);
  write_field(dir / "f.bin", f, 1.25);
  const auto back = read_field(dir / "f.bin");
  CHECK(back.grid() == g);
  CHECK(back.coeffs() == f.coeffs());
  CHECK(std::filesystem::exists(dir / "f.bin.json"));
  CHECK(std::filesystem::file_size(dir / "f.bin") == 16 + 16 * 8 * 16);
  write_physical_csv(dir / "f.csv", f);
  CHECK(std::filesystem::file_size(dir / "f.csv") > 0);
  std::filesystem::remove_all(dir);
}
