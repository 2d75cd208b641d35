#include "fracshear/spectral_ops.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fracshear/errors.hpp"
#include "fracshear/fft.hpp"
#include "fracshear/loops.hpp"

namespace fracshear {

namespace {

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha <= 2.0))
    throw ParameterError("alpha must lie in (0,2], got " + std::to_string(alpha));
}

double frac_symbol(int k, int l, double s) {
  if (k == 0 && l == 0) return 0.0;
  return std::pow(static_cast<double>(k * k + l * l), 0.5 * s);
}

SpectralField2D apply_real_table(const SpectralField2D& f, const std::vector<double>& table) {
  SpectralField2D out = f;
  loops::omp::apply_symbol(out.coeffs(), table);
  return out;
}

std::vector<double> frac_table(const TorusGrid& g, double s) {
  std::vector<double> t(g.size());
  for (std::size_t i = 0; i < g.nx(); ++i)
    for (std::size_t j = 0; j < g.ny(); ++j) t[i * g.ny() + j] = frac_symbol(g.kx(i), g.ky(j), s);
  return t;
}

}  // namespace

std::vector<cplx> Multiplier::table(const TorusGrid& grid) const {
  std::vector<cplx> t(grid.size());
  for (std::size_t i = 0; i < grid.nx(); ++i)
    for (std::size_t j = 0; j < grid.ny(); ++j) t[i * grid.ny() + j] = symbol_(grid.kx(i), grid.ky(j));
  return t;
}

SpectralField2D Multiplier::apply(const SpectralField2D& f) const {
  SpectralField2D out = f;
  const auto t = table(f.grid());
  loops::omp::apply_symbol(out.coeffs(), t);
  return out;
}

Multiplier operator*(const Multiplier& a, const Multiplier& b) {
  return Multiplier([a, b](int k, int l) { return a(k, l) * b(k, l); });
}

Multiplier Multiplier::identity() {
  return Multiplier([](int, int) { return cplx{1.0, 0.0}; });
}

Multiplier Multiplier::frac_power(double s) {
  return Multiplier([s](int k, int l) { return cplx{frac_symbol(k, l, s), 0.0}; });
}

Multiplier Multiplier::lambda_y_power(double s) {
  return Multiplier([s](int, int l) { return cplx{l == 0 ? 0.0 : std::pow(std::abs(static_cast<double>(l)), s), 0.0}; });
}

Multiplier Multiplier::ddx() {
  return Multiplier([](int k, int) { return cplx{0.0, static_cast<double>(k)}; });
}

Multiplier Multiplier::ddy() {
  return Multiplier([](int, int l) { return cplx{0.0, static_cast<double>(l)}; });
}

Multiplier Multiplier::inv_laplacian() {
  return Multiplier([](int k, int l) { return cplx{frac_symbol(k, l, -2.0), 0.0}; });
}

SpectralField2D frac_laplacian(const SpectralField2D& f, double alpha) {
  check_alpha(alpha);
  return frac_power(f, alpha);
}

SpectralField1D frac_laplacian_1d(const SpectralField1D& f, double alpha) {
  check_alpha(alpha);
  return frac_power_1d(f, alpha);
}

SpectralField2D frac_power(const SpectralField2D& f, double s) {
  return apply_real_table(f, frac_table(f.grid(), s));
}

SpectralField1D frac_power_1d(const SpectralField1D& f, double s) {
  SpectralField1D out = f;
  const int h = static_cast<int>(f.ny() / 2);
  for (int l = -h; l < h; ++l) out.at(l) *= frac_symbol(0, l, s);
  return out;
}

SpectralField2D lambda_y_power(const SpectralField2D& f, double s) {
  const auto& g = f.grid();
  std::vector<double> t(g.size());
  for (std::size_t i = 0; i < g.nx(); ++i)
    for (std::size_t j = 0; j < g.ny(); ++j) t[i * g.ny() + j] = frac_symbol(0, g.ky(j), s);
  return apply_real_table(f, t);
}

SpectralField1D project_zero(const SpectralField2D& f) {
  const auto& g = f.grid();
  std::vector<cplx> c(g.ny());
  for (std::size_t j = 0; j < g.ny(); ++j) c[j] = f(0, j);
  return SpectralField1D(g.ny(), std::move(c));
}

SpectralField2D project_nonzero(const SpectralField2D& f) {
  SpectralField2D out = f;
  for (std::size_t j = 0; j < f.grid().ny(); ++j) out(0, j) = cplx{};
  return out;
}

SpectralField2D embed_zero(const SpectralField1D& f, const TorusGrid& grid) {
  if (f.ny() != grid.ny()) throw ShapeError("1D field does not match grid ny");
  SpectralField2D out(grid);
  for (std::size_t j = 0; j < grid.ny(); ++j) out(0, j) = f.coeffs()[j];
  return out;
}

SpectralField2D inv_laplacian_meanzero(const SpectralField2D& f) { return frac_power(f, -2.0); }

SpectralField2D ddx(const SpectralField2D& f) {
  SpectralField2D out = f;
  const auto& g = f.grid();
  for (std::size_t i = 0; i < g.nx(); ++i) {
    const cplx ik{0.0, static_cast<double>(g.kx(i))};
    for (std::size_t j = 0; j < g.ny(); ++j) out(i, j) *= ik;
  }
  return out;
}

SpectralField2D ddy(const SpectralField2D& f) {
  SpectralField2D out = f;
  const auto& g = f.grid();
  for (std::size_t i = 0; i < g.nx(); ++i)
    for (std::size_t j = 0; j < g.ny(); ++j) out(i, j) *= cplx{0.0, static_cast<double>(g.ky(j))};
  return out;
}

std::pair<SpectralField2D, SpectralField2D> grad(const SpectralField2D& f) { return {ddx(f), ddy(f)}; }

SpectralField2D div(const SpectralField2D& vx, const SpectralField2D& vy) {
  if (!(vx.grid() == vy.grid())) throw ShapeError("div: component grids differ");
  return ddx(vx) + ddy(vy);
}

SpectralField1D ddy_1d(const SpectralField1D& f) {
  SpectralField1D out = f;
  const int h = static_cast<int>(f.ny() / 2);
  for (int l = -h; l < h; ++l) out.at(l) *= cplx{0.0, static_cast<double>(l)};
  return out;
}

void dealias_in_place(SpectralField2D& f) {
  const auto& g = f.grid();
  const int kc = g.kx_cut(), lc = g.ky_cut();
  for (std::size_t i = 0; i < g.nx(); ++i) {
    const bool kill_row = std::abs(g.kx(i)) > kc;
    for (std::size_t j = 0; j < g.ny(); ++j)
      if (kill_row || std::abs(g.ky(j)) > lc) f(i, j) = cplx{};
  }
}

SpectralField2D dealias(const SpectralField2D& f) {
  SpectralField2D out = f;
  dealias_in_place(out);
  return out;
}

SpectralField1D dealias_1d(const SpectralField1D& f) {
  SpectralField1D out = f;
  const int h = static_cast<int>(f.ny() / 2), lc = static_cast<int>(f.ny() / 3);
  for (int l = -h; l < h; ++l)
    if (std::abs(l) > lc) out.at(l) = cplx{};
  return out;
}

double l2_norm(const SpectralField2D& f) {
  double s = 0.0;
  for (const auto& c : f.coeffs()) s += std::norm(c);
  return kTwoPi * std::sqrt(s);
}

Norms norms(const SpectralField2D& f) {
  Norms n;
  n.l2 = l2_norm(f);
  const auto phys = to_physical(f);
  double sum = 0.0, mx = 0.0;
  for (double v : phys.values) {
    sum += std::abs(v);
    mx = std::max(mx, std::abs(v));
  }
  n.l1 = sum * kTwoPi * kTwoPi / static_cast<double>(phys.values.size());
  n.linf = mx;
  return n;
}

double hs_seminorm(const SpectralField2D& f, double s) {
  const auto& g = f.grid();
  double acc = 0.0;
  for (std::size_t i = 0; i < g.nx(); ++i)
    for (std::size_t j = 0; j < g.ny(); ++j) {
      const double m = frac_symbol(g.kx(i), g.ky(j), s);
      acc += m * m * std::norm(f(i, j));
    }
  return kTwoPi * std::sqrt(acc);
}

double h1_norm(const SpectralField2D& f) {
  const double a = l2_norm(f), b = hs_seminorm(f, 1.0);
  return std::sqrt(a * a + b * b);
}

double inner_product(const SpectralField2D& f, const SpectralField2D& g) {
  if (!(f.grid() == g.grid())) throw ShapeError("inner_product: grids differ");
  double acc = 0.0;
  for (std::size_t i = 0; i < f.coeffs().size(); ++i) acc += (std::conj(f.coeffs()[i]) * g.coeffs()[i]).real();
  return kTwoPi * kTwoPi * acc;
}

double l2_norm_1d(const SpectralField1D& f) {
  double s = 0.0;
  for (const auto& c : f.coeffs()) s += std::norm(c);
  return std::sqrt(kTwoPi * s);
}

}  // namespace fracshear
