#pragma once

// Transforms between Fourier coefficients and collocation samples.
// Forward transforms divide by the number of points; the collocation nodes
// start at −π, so the (−1)^{k+l} phase of the shifted grid is applied here.

#include <span>
#include <vector>

#include "fracshear/spectral.hpp"

namespace fracshear {

PhysicalField2D to_physical(const SpectralField2D& f);
SpectralField2D to_spectral(const PhysicalField2D& f);

PhysicalField1D to_physical(const SpectralField1D& f);
SpectralField1D to_spectral(const PhysicalField1D& f);

/// Complex samples; used where fields are not real (single complex exponentials).
std::vector<cplx> to_physical_complex(const SpectralField2D& f);
SpectralField2D to_spectral_complex(const TorusGrid& grid, std::span<const cplx> samples);

template <class F>
PhysicalField2D sample_physical(const TorusGrid& grid, F&& fn) {
  PhysicalField2D out(grid);
  for (std::size_t i = 0; i < grid.nx(); ++i)
    for (std::size_t j = 0; j < grid.ny(); ++j) out(i, j) = fn(grid.x(i), grid.y(j));
  return out;
}

/// Spectral field of a real function sampled on the grid.
template <class F>
SpectralField2D sample(const TorusGrid& grid, F&& fn) {
  return to_spectral(sample_physical(grid, std::forward<F>(fn)));
}

}  // namespace fracshear
