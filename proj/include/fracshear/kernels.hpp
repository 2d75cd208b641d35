#pragma once

// Attractive kernel B(n) = ∇(−Δ)⁻¹(n − n̄) and the right-hand sides of the
// rescaled aggregation equation
//   ∂t n + u(y)∂x n + νΛ^α n + ν∇·(n B(n)) = 0,
// assembled either in one piece or split into x-average and remainder.
//
// All right-hand sides act on the two-thirds band: inputs are dealiased,
// quadratic products are formed on the collocation grid and the results are
// dealiased again, so every assembly is the exact Galerkin projection.

#include <span>
#include <utility>

#include "fracshear/shear.hpp"
#include "fracshear/spectral.hpp"

namespace fracshear {

struct KernelField {
  SpectralField2D bx;
  SpectralField2D by;
  SpectralField1D b1;
};

/// B(n) in (bx, by); b1 holds B₁(P₀n).
KernelField attractive_kernel(const SpectralField2D& n);

/// B₁(n⁰) = ∂y(−∂yy)⁻¹(n⁰ − n̄).
SpectralField1D kernel_b1(const SpectralField1D& n0);

/// B₂(n≠) = ∇(−Δ)⁻¹ n≠; throws PreconditionError if the k = 0 column is not zero.
std::pair<SpectralField2D, SpectralField2D> kernel_b2(const SpectralField2D& nneq);

/// Dealiased product of two real fields.
SpectralField2D product(const SpectralField2D& a, const SpectralField2D& b);
SpectralField1D product_1d(const SpectralField1D& a, const SpectralField1D& b);

/// u(y)∂x n on the band; u_on_grid holds u at the ny collocation nodes.
SpectralField2D advection_term(const SpectralField2D& n, std::span<const double> u_on_grid);
SpectralField2D advection_term(const SpectralField2D& n, const ShearProfile& u);

/// Dealiased ∇·(n B(n)).
SpectralField2D aggregation_divergence(const SpectralField2D& n);

/// −u∂x n − νΛ^α n − ν∇·(nB(n)); the (0,0) coefficient is exactly zero.
SpectralField2D nonlinear_rhs(const SpectralField2D& n, const ShearProfile& u, double alpha, double nu);

/// Right side of the x-averaged equation.
SpectralField1D mode_rhs_zero(const SpectralField1D& n0, const SpectralField2D& nneq, double alpha, double nu);

/// Right side of the nonzero-mode equation, term by term.
SpectralField2D mode_rhs_nonzero(const SpectralField1D& n0, const SpectralField2D& nneq, const ShearProfile& u,
                                 double alpha, double nu);

}  // namespace fracshear
