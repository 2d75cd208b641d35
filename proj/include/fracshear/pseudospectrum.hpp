#pragma once

// Pseudospectral bound Ψ(H) = inf_{λ∈ℝ} σ_min(H − iλI) of a ModeOperator,
// the Gearhart–Prüss comparison and log–log scaling fits.

#include <optional>
#include <span>
#include <vector>

#include "fracshear/linear_dynamics.hpp"

namespace fracshear {

/// Smallest singular value of (matrix − iλI): dense SVD for L ≤ 256,
/// shift-invert iteration beyond; exact for diagonal operators.
double sigma_min(const ModeOperator& op, double lambda);

/// σ_min over a list of λ; the parallel and serial versions return identical values.
std::vector<double> sigma_min_scan(const ModeOperator& op, std::span<const double> lambdas);
std::vector<double> sigma_min_scan_serial(const ModeOperator& op, std::span<const double> lambdas);

struct PsiSample {
  double lambda;
  double sigma;
};

struct PsiResult {
  double psi = 0.0;
  double lambda_star = 0.0;
  int k = 0;
  double nu = 0.0;
  double alpha = 0.0;
  int L = 0;
  double coarse_min = 0.0;  // best value on the λ grid before refinement
  std::vector<PsiSample> trace;
  /// σ_min(λ*) at truncation 2L and the convergence verdict.
  double psi_2L = 0.0;
  bool converged = false;
};

struct PsiOptions {
  int grid_points = 201;
  double refine_width = 1e-4;  // relative to the grid bracket
  int refine_candidates = 3;
  bool check_convergence = true;
  double convergence_tol = 1e-4;
};

/// Grid search of λ over k·[min u − margin, max u + margin],
/// margin = ν|k|^α + 0.1(max u − min u), then golden-section refinement.
PsiResult psi_bound(const ShearProfile& u, int k, double nu, double alpha, int L, const PsiOptions& opts = {});

struct GearhartPrussEntry {
  double t;
  double norm;
  double bound;  // e^{−tΨ+π/2}
};

struct GearhartPrussReport {
  double psi = 0.0;
  std::vector<GearhartPrussEntry> entries;
  double max_ratio = 0.0;  // max norm/bound
  int violations = 0;      // norm > bound·(1+1e-6)
  bool consistent() const { return violations == 0; }
};

/// Checks ‖e^{−tH}‖ ≤ e^{−tΨ+π/2} at the given times; Ψ is computed when not supplied.
GearhartPrussReport gearhart_pruss_check(const ShearProfile& u, int k, double nu, double alpha, int L,
                                         std::span<const double> times, std::optional<double> psi = std::nullopt);

struct PsiScaling {
  std::optional<double> exponent_nu;
  std::optional<double> exponent_k;
  double prefactor = 0.0;
  double rms_residual = 0.0;
};

/// Log–log slope of Ψ against whichever of ν or |k| varies (the rest must be fixed).
PsiScaling psi_scaling_fit(std::span<const PsiResult> results);

}  // namespace fracshear
