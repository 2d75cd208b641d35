#pragma once

// Small numerical helpers: least-squares lines and Gauss–Legendre rules.

#include <span>
#include <vector>

namespace fracshear {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double rms_residual = 0.0;
};

/// Ordinary least squares y ≈ slope·x + intercept; needs two distinct x.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

/// Least squares in log–log coordinates; all values must be positive.
LineFit fit_loglog(std::span<const double> x, std::span<const double> y);

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// q-point Gauss–Legendre rule mapped to [a, b] (Golub–Welsch).
QuadratureRule gauss_legendre(int q, double a = -1.0, double b = 1.0);

/// n points from a to b equally spaced in log (a, b > 0).
std::vector<double> logspace(double a, double b, int n);

/// Mean and coefficient of variation (σ/|μ|) of a sample.
struct Summary {
  double mean = 0.0;
  double cv = 0.0;
  double min = 0.0;
  double max = 0.0;
};
Summary summarize(std::span<const double> v);

}  // namespace fracshear
