#pragma once

// Data-parallel inner loops. Every kernel has a serial reference under
// loops::serial and an OpenMP version under loops::omp with identical
// results (no reductions, disjoint output ranges). Library code calls the
// OpenMP versions; tests and the benchmark compare the two.

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "fracshear/spectral.hpp"

namespace fracshear::loops {

namespace serial {
/// data[i] *= symbol[i]
void apply_symbol(std::span<cplx> data, std::span<const cplx> symbol);
void apply_symbol(std::span<cplx> data, std::span<const double> symbol);
/// out[i] = a[i] * b[i]
void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out);
/// Applies propagators[r] to the band |l| ≤ band of row r of a (k,l) coefficient array
/// (row r holds kx index r). Rows with an empty matrix are left unchanged.
void propagate_rows(SpectralField2D& field, std::span<const Eigen::MatrixXcd> propagators, int band);
}  // namespace serial

namespace omp {
void apply_symbol(std::span<cplx> data, std::span<const cplx> symbol);
void apply_symbol(std::span<cplx> data, std::span<const double> symbol);
void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out);
void propagate_rows(SpectralField2D& field, std::span<const Eigen::MatrixXcd> propagators, int band);
}  // namespace omp

}  // namespace fracshear::loops
