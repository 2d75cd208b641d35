#pragma once

// Initial densities and seeded random fields.

#include <cstdint>

#include "fracshear/config.hpp"
#include "fracshear/spectral.hpp"

namespace fracshear {

/// Periodized Gaussian of the given width centred at (cx, cy), scaled so that ∫n = mass.
SpectralField2D gaussian_bump(const TorusGrid& grid, double mass, double cx, double cy, double width);

/// mean + amplitude·cos(kx + ly).
SpectralField2D single_mode(const TorusGrid& grid, double mean, double amplitude, int k, int l);

/// Real field with independent Gaussian coefficients on |k|, |l| ≤ band
/// (variance decaying like (1+k²+l²)^{-2}), zero mean; deterministic in seed.
SpectralField2D random_field(const TorusGrid& grid, int band, std::uint64_t seed);

/// mass/(4π²) plus a random-band fluctuation whose sup norm is amplitude·mean.
SpectralField2D random_band(const TorusGrid& grid, double mass, double amplitude, int band, std::uint64_t seed);

/// Builds the field described by the spec (file kind reads a binary snapshot).
SpectralField2D make_initial_data(const InitialDataSpec& spec, const TorusGrid& grid, std::uint64_t seed);

}  // namespace fracshear
