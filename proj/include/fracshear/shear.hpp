#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "fracshear/spectral.hpp"

namespace fracshear {

/// Flatness data of a shear profile: m is the largest order of the first
/// nonvanishing derivative of u over its critical points.
struct FlatnessInfo {
  int m = 1;
  std::vector<double> critical_points;
  std::vector<int> orders;
  double c1 = 0.0;
};

/// Smooth real shear u(y) on T, held as samples and Fourier coefficients.
class ShearProfile {
 public:
  /// Samples on y_j = −π + 2πj/ny; ny must be a power of two >= 8.
  static ShearProfile from_samples(std::string name, std::vector<double> samples);
  /// "cos" (Kolmogorov, also "kolmogorov"), "cos2", "sin3", "zero", "const".
  static ShearProfile named(const std::string& name, std::size_t ny = 64);

  const std::string& name() const { return name_; }
  std::size_t resolution() const { return samples_.size(); }
  const std::vector<double>& samples() const { return samples_; }

  /// û(l); zero outside the resolved range |l| < ny/2.
  cplx coeff(int l) const;
  /// Largest |l| with |û(l)| above 1e-14·max|û|.
  int bandwidth() const { return bandwidth_; }

  double value(double y) const { return derivative(y, 0); }
  double derivative(double y, int order) const;
  /// Spectral interpolant on an ny-point grid starting at −π.
  std::vector<double> sample(std::size_t ny) const;

  double min_value() const { return min_; }
  double max_value() const { return max_; }
  double max_abs() const { return std::max(std::abs(min_), std::abs(max_)); }
  bool is_constant() const { return bandwidth_ == 0; }
  bool is_zero() const { return is_constant() && std::abs(coeff(0)) == 0.0; }

  const std::optional<FlatnessInfo>& flatness() const { return flatness_; }
  void set_flatness(FlatnessInfo info) { flatness_ = std::move(info); }

 private:
  ShearProfile(std::string name, std::vector<double> samples);

  std::string name_;
  std::vector<double> samples_;
  std::vector<cplx> coeffs_;
  int bandwidth_ = 0;
  double min_ = 0.0;
  double max_ = 0.0;
  std::optional<FlatnessInfo> flatness_;
};

/// Critical points of u (refined on the spectral interpolant), the flatness
/// order m and an estimate of c₁ in |u(y)−λ| ≥ c₁δ^m. Throws
/// PreconditionError for a constant profile.
FlatnessInfo detect_flatness_order(const ShearProfile& u);

}  // namespace fracshear
