#pragma once

// Grids and Fourier-coefficient fields on the 2π-periodic torus T² = [−π,π)².
//
// Coefficients are true Fourier coefficients: f(x,y) = Σ f̂(k,l) e^{i(kx+ly)}.
// Storage follows FFT order along each axis: index i holds wavenumber i for
// i < n/2 and i − n otherwise. 2D storage is row-major with k outer.

#include <complex>
#include <cstddef>
#include <vector>

namespace fracshear {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

class TorusGrid {
 public:
  /// Both sizes must be powers of two and at least 8.
  TorusGrid(std::size_t nx, std::size_t ny);

  std::size_t nx() const { return nx_; }
  std::size_t ny() const { return ny_; }
  std::size_t size() const { return nx_ * ny_; }

  int kx(std::size_t i) const { return signed_wavenumber(i, nx_); }
  int ky(std::size_t j) const { return signed_wavenumber(j, ny_); }
  std::size_t index_x(int k) const { return storage_index(k, nx_); }
  std::size_t index_y(int l) const { return storage_index(l, ny_); }
  bool contains(int k, int l) const;

  double x(std::size_t i) const { return -kPi + kTwoPi * static_cast<double>(i) / static_cast<double>(nx_); }
  double y(std::size_t j) const { return -kPi + kTwoPi * static_cast<double>(j) / static_cast<double>(ny_); }

  /// Largest |k| (|l|) kept by the two-thirds rule.
  int kx_cut() const { return static_cast<int>(nx_ / 3); }
  int ky_cut() const { return static_cast<int>(ny_ / 3); }

  bool operator==(const TorusGrid&) const = default;

  static int signed_wavenumber(std::size_t i, std::size_t n) {
    return i < n / 2 ? static_cast<int>(i) : static_cast<int>(i) - static_cast<int>(n);
  }
  static std::size_t storage_index(int k, std::size_t n) {
    return k >= 0 ? static_cast<std::size_t>(k) : static_cast<std::size_t>(static_cast<int>(n) + k);
  }

 private:
  std::size_t nx_;
  std::size_t ny_;
};

/// Fourier coefficients of a (usually real) scalar field on T².
class SpectralField2D {
 public:
  explicit SpectralField2D(const TorusGrid& grid);
  SpectralField2D(const TorusGrid& grid, std::vector<cplx> coeffs);

  const TorusGrid& grid() const { return grid_; }
  std::vector<cplx>& coeffs() { return coeffs_; }
  const std::vector<cplx>& coeffs() const { return coeffs_; }

  cplx& operator()(std::size_t i, std::size_t j) { return coeffs_[i * grid_.ny() + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return coeffs_[i * grid_.ny() + j]; }

  /// Signed-wavenumber access; (k,l) must be on the grid.
  cplx& at(int k, int l) { return (*this)(grid_.index_x(k), grid_.index_y(l)); }
  const cplx& at(int k, int l) const { return (*this)(grid_.index_x(k), grid_.index_y(l)); }
  /// Returns 0 for wavenumbers that are not on the grid.
  cplx get(int k, int l) const;

  /// Mean value n̄ (the real part of the (0,0) coefficient).
  double mean() const { return coeffs_[0].real(); }

  /// max |f̂(−k,−l) − conj f̂(k,l)| relative to max |f̂|; zero for a real field.
  double hermitian_defect() const;

  SpectralField2D& operator+=(const SpectralField2D& o);
  SpectralField2D& operator-=(const SpectralField2D& o);
  SpectralField2D& operator*=(cplx s);
  /// this += s * o
  SpectralField2D& axpy(cplx s, const SpectralField2D& o);

  friend SpectralField2D operator+(SpectralField2D a, const SpectralField2D& b) { return a += b; }
  friend SpectralField2D operator-(SpectralField2D a, const SpectralField2D& b) { return a -= b; }
  friend SpectralField2D operator*(cplx s, SpectralField2D a) { return a *= s; }

 private:
  TorusGrid grid_;
  std::vector<cplx> coeffs_;
};

/// Fourier coefficients of a function of y alone (the x-average n⁰).
class SpectralField1D {
 public:
  explicit SpectralField1D(std::size_t ny);
  SpectralField1D(std::size_t ny, std::vector<cplx> coeffs);

  std::size_t ny() const { return coeffs_.size(); }
  std::vector<cplx>& coeffs() { return coeffs_; }
  const std::vector<cplx>& coeffs() const { return coeffs_; }
  cplx& at(int l) { return coeffs_[TorusGrid::storage_index(l, ny())]; }
  const cplx& at(int l) const { return coeffs_[TorusGrid::storage_index(l, ny())]; }
  double mean() const { return coeffs_[0].real(); }
  double hermitian_defect() const;

  SpectralField1D& operator+=(const SpectralField1D& o);
  SpectralField1D& operator-=(const SpectralField1D& o);
  SpectralField1D& operator*=(cplx s);
  friend SpectralField1D operator+(SpectralField1D a, const SpectralField1D& b) { return a += b; }
  friend SpectralField1D operator-(SpectralField1D a, const SpectralField1D& b) { return a -= b; }
  friend SpectralField1D operator*(cplx s, SpectralField1D a) { return a *= s; }

 private:
  std::vector<cplx> coeffs_;
};

/// Real samples on the collocation nodes (x_i, y_j), row-major with i outer.
struct PhysicalField2D {
  TorusGrid grid;
  std::vector<double> values;

  explicit PhysicalField2D(const TorusGrid& g) : grid(g), values(g.size(), 0.0) {}
  double& operator()(std::size_t i, std::size_t j) { return values[i * grid.ny() + j]; }
  double operator()(std::size_t i, std::size_t j) const { return values[i * grid.ny() + j]; }
};

struct PhysicalField1D {
  std::vector<double> values;
  explicit PhysicalField1D(std::size_t ny) : values(ny, 0.0) {}
  std::size_t ny() const { return values.size(); }
};

}  // namespace fracshear
