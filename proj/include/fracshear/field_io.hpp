#pragma once

// Snapshot format: little-endian binary
//   uint64 nx, uint64 ny, then nx*ny (re, im) float64 pairs in storage order
//   (k index outer, FFT ordering along both axes)
// plus a JSON descriptor written next to it as <path>.json.

#include <filesystem>

#include "fracshear/spectral.hpp"

namespace fracshear {

void write_field(const std::filesystem::path& path, const SpectralField2D& f, double time = 0.0);
SpectralField2D read_field(const std::filesystem::path& path);

/// Physical samples as CSV with columns x,y,value.
void write_physical_csv(const std::filesystem::path& path, const SpectralField2D& f);

}  // namespace fracshear
