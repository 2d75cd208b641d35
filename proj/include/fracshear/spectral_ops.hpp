#pragma once

// Fourier multipliers, projections, differentiation and norms on T² and T.

#include <functional>
#include <utility>
#include <vector>

#include "fracshear/spectral.hpp"

namespace fracshear {

/// Diagonal operator in Fourier space given by its symbol m(k,l).
class Multiplier {
 public:
  using Symbol = std::function<cplx(int k, int l)>;

  explicit Multiplier(Symbol symbol) : symbol_(std::move(symbol)) {}

  cplx operator()(int k, int l) const { return symbol_(k, l); }
  /// Symbol evaluated on every grid mode, in storage order.
  std::vector<cplx> table(const TorusGrid& grid) const;
  SpectralField2D apply(const SpectralField2D& f) const;

  /// Symbols multiply pointwise.
  friend Multiplier operator*(const Multiplier& a, const Multiplier& b);

  static Multiplier identity();
  /// (k²+l²)^{s/2} on (k,l) ≠ (0,0); zero on the mean mode. Negative s allowed.
  static Multiplier frac_power(double s);
  /// |l|^s on l ≠ 0, zero on l = 0 (one-dimensional Λ_y^s acting on 2D fields).
  static Multiplier lambda_y_power(double s);
  static Multiplier ddx();
  static Multiplier ddy();
  /// 1/(k²+l²) on (k,l) ≠ (0,0); zero on the mean mode.
  static Multiplier inv_laplacian();

 private:
  Symbol symbol_;
};

/// Λ^α f with symbol (k²+l²)^{α/2}; α must lie in (0,2].
SpectralField2D frac_laplacian(const SpectralField2D& f, double alpha);
/// (−∂yy)^{α/2} with symbol (l²)^{α/2}; α must lie in (0,2].
SpectralField1D frac_laplacian_1d(const SpectralField1D& f, double alpha);

/// Λ^s for any real s, defined on mean-zero modes.
SpectralField2D frac_power(const SpectralField2D& f, double s);
SpectralField1D frac_power_1d(const SpectralField1D& f, double s);
SpectralField2D lambda_y_power(const SpectralField2D& f, double s);

/// x-average n⁰ (the k = 0 column).
SpectralField1D project_zero(const SpectralField2D& f);
/// n − n⁰ (k = 0 column zeroed).
SpectralField2D project_nonzero(const SpectralField2D& f);
/// x-independent 2D field with the given y-coefficients.
SpectralField2D embed_zero(const SpectralField1D& f, const TorusGrid& grid);

/// (−Δ)⁻¹ on mean-zero modes; the (0,0) coefficient of the result is 0.
SpectralField2D inv_laplacian_meanzero(const SpectralField2D& f);

SpectralField2D ddx(const SpectralField2D& f);
SpectralField2D ddy(const SpectralField2D& f);
std::pair<SpectralField2D, SpectralField2D> grad(const SpectralField2D& f);
SpectralField2D div(const SpectralField2D& vx, const SpectralField2D& vy);
SpectralField1D ddy_1d(const SpectralField1D& f);

/// Zero every mode with |k| > nx/3 or |l| > ny/3.
SpectralField2D dealias(const SpectralField2D& f);
SpectralField1D dealias_1d(const SpectralField1D& f);
void dealias_in_place(SpectralField2D& f);

struct Norms {
  double l1 = 0.0;
  double l2 = 0.0;
  double linf = 0.0;
};

/// L² from Parseval (‖e^{i(kx+ly)}‖ = 2π); L¹ and L∞ from the collocation samples.
Norms norms(const SpectralField2D& f);
double l2_norm(const SpectralField2D& f);
/// Homogeneous Ḣ^s seminorm: L² norm of (k²+l²)^{s/2} f̂ over nonzero modes.
double hs_seminorm(const SpectralField2D& f, double s);
/// ‖f‖_{H¹} = (‖f‖² + ‖∇f‖²)^{1/2}.
double h1_norm(const SpectralField2D& f);
/// Re ∫_{T²} conj(f) g.
double inner_product(const SpectralField2D& f, const SpectralField2D& g);

/// L²(T) norm of a function of y.
double l2_norm_1d(const SpectralField1D& f);

}  // namespace fracshear
