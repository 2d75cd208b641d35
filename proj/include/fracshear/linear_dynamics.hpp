#pragma once

// The per-x-wavenumber linear operator
//   L_k = ν(k² − ∂yy)^{α/2} + ik·u(y)
// truncated to y-modes l ∈ [−L, L], its exact propagators, semigroup norms,
// decay-rate fits and the commutator form of the Duhamel identity.

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "fracshear/shear.hpp"
#include "fracshear/spectral.hpp"

namespace fracshear {

/// Dense (2L+1)×(2L+1) matrix; row/column index i stands for y-mode l = i − L.
struct ModeOperator {
  int k = 1;
  double nu = 0.0;
  double alpha = 0.0;
  int L = 0;
  Eigen::MatrixXcd matrix;
  /// True when the Toeplitz part is a multiple of the identity (u constant).
  bool diagonal = false;

  Eigen::Index dim() const { return matrix.rows(); }
  int mode(Eigen::Index i) const { return static_cast<int>(i) - L; }
};

/// Requires k ≠ 0, ν > 0, α ∈ (0,2], L ≥ 4.
ModeOperator build_mode_operator(const ShearProfile& u, int k, double nu, double alpha, int L);

/// Same matrix without the public preconditions (any k, any L ≥ 0). Used by
/// the solver for the Galerkin band.
ModeOperator mode_operator_unchecked(const ShearProfile& u, int k, double nu, double alpha, int L);

/// e^{−t·matrix}; t ≥ 0.
Eigen::MatrixXcd propagator(const ModeOperator& op, double t);
Eigen::VectorXcd propagate_mode(const ModeOperator& op, const Eigen::VectorXcd& g0, double t);

/// Largest singular value.
double spectral_norm(const Eigen::MatrixXcd& a);

double semigroup_norm(const ModeOperator& op, double t);
/// sup over k ∈ [1, k_max] of the per-k semigroup norms.
double semigroup_norm_nonzero(const ShearProfile& u, double nu, double alpha, double t, int k_max, int L);

struct DecayFit {
  double rate = 0.0;       // λ̂
  double prefactor = 0.0;  // Ĉ
  double t_a = 0.0;
  double t_b = 0.0;
  double residual = 0.0;  // rms residual of log N
  std::size_t samples = 0;
};

/// Least-squares line on (t, log N): λ̂ = −slope, Ĉ = e^{intercept}.
/// Needs at least 8 samples, all positive.
DecayFit fit_decay_rate(std::span<const double> t, std::span<const double> norms);

struct DecayOptions {
  int samples = 40;
  double norm_floor = 1e-12;
};

struct DecayMeasurement {
  std::vector<double> t;
  std::vector<double> norm;
  double rate_guess = 0.0;  // two-point estimate λ̂₀
  DecayFit fit;
};

/// Samples ‖e^{−tM}‖ on a window that skips t < 2/λ̂₀ and ends where the
/// norm reaches the floor, then fits the decay rate.
DecayMeasurement measure_decay(const ModeOperator& op, const DecayOptions& opts = {});

/// ν∫_s^t ‖Λ^{α/2}e^{−τM}‖² dτ by composite Gauss–Legendre (8 nodes per panel).
double integrated_dissipation(const ModeOperator& op, double s, double t, int panels = 16);

/// R f = Λ_y^{α/2}(u∂x f) − u∂x(Λ_y^{α/2} f), assembled on the field.
SpectralField2D commutator_R(const SpectralField2D& f, const ShearProfile& u, double alpha);

/// ik[D, Toeplitz(û)] with D = diag(|l|^{α/2}) on l ∈ [−L, L].
Eigen::MatrixXcd commutator_matrix(const ShearProfile& u, int k, double alpha, int L);

/// Relative L² residual of
///   S_t g = Λ_y^{α/2} S_t Λ_y^{−α/2} g + ∫₀ᵗ S_{t−τ} R S_τ Λ_y^{−α/2} g dτ,  g = ∂y f0,
/// evaluated per x-mode at truncation L with q Gauss–Legendre nodes.
/// f0 must have no k = 0 content.
double duhamel_identity_check(const SpectralField2D& f0, const ShearProfile& u, double nu, double alpha, double t,
                              int q, int L);

}  // namespace fracshear
