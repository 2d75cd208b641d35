#include "fracshear/initial_data.hpp"

#include <cmath>
#include <random>

#include "fracshear/errors.hpp"
#include "fracshear/fft.hpp"
#include "fracshear/field_io.hpp"
#include "fracshear/spectral_ops.hpp"

namespace fracshear {

SpectralField2D gaussian_bump(const TorusGrid& grid, double mass, double cx, double cy, double width) {
  if (!(mass > 0.0) || !(width > 0.0)) throw ParameterError("gaussian_bump: mass and width must be positive");
  const int images = 3;  // e^{-(2π·3)²/(2w²)} is negligible for w ≤ 2
  auto f = sample(grid, [&](double x, double y) {
    double v = 0.0;
    for (int a = -images; a <= images; ++a)
      for (int b = -images; b <= images; ++b) {
        const double dx = x - cx + kTwoPi * a, dy = y - cy + kTwoPi * b;
        v += std::exp(-(dx * dx + dy * dy) / (2.0 * width * width));
      }
    return v;
  });
  f *= mass / (4.0 * kPi * kPi * f(0, 0).real());
  f(0, 0) = cplx{mass / (4.0 * kPi * kPi), 0.0};
  return f;
}

SpectralField2D single_mode(const TorusGrid& grid, double mean, double amplitude, int k, int l) {
  SpectralField2D f(grid);
  f(0, 0) = mean;
  if (k == 0 && l == 0) {
    f(0, 0) += amplitude;
    return f;
  }
  if (!grid.contains(k, l) || !grid.contains(-k, -l)) throw ParameterError("single_mode: wavenumber not on the grid");
  f.at(k, l) += 0.5 * amplitude;
  f.at(-k, -l) += 0.5 * amplitude;
  return f;
}

SpectralField2D random_field(const TorusGrid& grid, int band, std::uint64_t seed) {
  if (band < 1 || band >= static_cast<int>(std::min(grid.nx(), grid.ny()) / 2))
    throw ParameterError("random_field: band must lie in [1, n/2)");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  SpectralField2D f(grid);
  // draw one coefficient per conjugate pair, upper half-plane first
  for (int k = 0; k <= band; ++k)
    for (int l = -band; l <= band; ++l) {
      if (k == 0 && l <= 0) continue;
      const double amp = 1.0 / (1.0 + k * k + l * l);
      const cplx c{amp * gauss(rng), amp * gauss(rng)};
      f.at(k, l) = c;
      f.at(-k, -l) = std::conj(c);
    }
  return f;
}

SpectralField2D random_band(const TorusGrid& grid, double mass, double amplitude, int band, std::uint64_t seed) {
  auto f = random_field(grid, band, seed);
  const double mean = mass / (4.0 * kPi * kPi);
  const double sup = norms(f).linf;
  if (sup > 0.0) f *= amplitude * mean / sup;
  f(0, 0) = cplx{mean, 0.0};
  return f;
}

SpectralField2D make_initial_data(const InitialDataSpec& spec, const TorusGrid& grid, std::uint64_t seed) {
  if (spec.kind == "gaussian-bump") return gaussian_bump(grid, spec.mass, spec.center_x, spec.center_y, spec.width);
  if (spec.kind == "single-mode") return single_mode(grid, spec.mean, spec.amplitude, spec.mode_k, spec.mode_l);
  if (spec.kind == "random-band") return random_band(grid, spec.mass, spec.amplitude, spec.band, seed);
  if (spec.kind == "file") {
    auto f = read_field(spec.file);
    if (!(f.grid() == grid)) throw ShapeError("initial data file grid does not match the configured grid");
    return f;
  }
  throw ParameterError("unknown initial data kind '" + spec.kind + "'");
}

}  // namespace fracshear
