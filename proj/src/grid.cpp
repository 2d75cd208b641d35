#include "fracshear/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fracshear/errors.hpp"

namespace fracshear {

namespace {
bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void require_same(std::size_t a, std::size_t b) {
  if (a != b) throw ShapeError("field size mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
}
}  // namespace

TorusGrid::TorusGrid(std::size_t nx, std::size_t ny) : nx_(nx), ny_(ny) {
  if (nx < 8 || ny < 8 || !is_pow2(nx) || !is_pow2(ny))
    throw ParameterError("grid sizes must be powers of two >= 8, got " + std::to_string(nx) + "x" +
                         std::to_string(ny));
}

bool TorusGrid::contains(int k, int l) const {
  const int hx = static_cast<int>(nx_ / 2), hy = static_cast<int>(ny_ / 2);
  return k >= -hx && k < hx && l >= -hy && l < hy;
}

SpectralField2D::SpectralField2D(const TorusGrid& grid) : grid_(grid), coeffs_(grid.size(), cplx{}) {}

SpectralField2D::SpectralField2D(const TorusGrid& grid, std::vector<cplx> coeffs)
    : grid_(grid), coeffs_(std::move(coeffs)) {
  require_same(coeffs_.size(), grid_.size());
}

cplx SpectralField2D::get(int k, int l) const { return grid_.contains(k, l) ? at(k, l) : cplx{}; }

double SpectralField2D::hermitian_defect() const {
  double scale = 0.0, defect = 0.0;
  const int hx = static_cast<int>(grid_.nx() / 2), hy = static_cast<int>(grid_.ny() / 2);
  for (int k = -hx + 1; k < hx; ++k)
    for (int l = -hy + 1; l < hy; ++l) {
      scale = std::max(scale, std::abs(at(k, l)));
      defect = std::max(defect, std::abs(at(-k, -l) - std::conj(at(k, l))));
    }
  return scale > 0.0 ? defect / scale : 0.0;
}

SpectralField2D& SpectralField2D::operator+=(const SpectralField2D& o) {
  if (!(grid_ == o.grid_)) throw ShapeError("grid mismatch in field addition");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

SpectralField2D& SpectralField2D::operator-=(const SpectralField2D& o) {
  if (!(grid_ == o.grid_)) throw ShapeError("grid mismatch in field subtraction");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  return *this;
}

SpectralField2D& SpectralField2D::operator*=(cplx s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

SpectralField2D& SpectralField2D::axpy(cplx s, const SpectralField2D& o) {
  if (!(grid_ == o.grid_)) throw ShapeError("grid mismatch in axpy");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += s * o.coeffs_[i];
  return *this;
}

SpectralField1D::SpectralField1D(std::size_t ny) : coeffs_(ny, cplx{}) {
  if (ny < 8 || !is_pow2(ny)) throw ParameterError("1D field size must be a power of two >= 8");
}

SpectralField1D::SpectralField1D(std::size_t ny, std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) {
  if (ny < 8 || !is_pow2(ny)) throw ParameterError("1D field size must be a power of two >= 8");
  require_same(coeffs_.size(), ny);
}

double SpectralField1D::hermitian_defect() const {
  double scale = 0.0, defect = 0.0;
  const int h = static_cast<int>(ny() / 2);
  for (int l = -h + 1; l < h; ++l) {
    scale = std::max(scale, std::abs(at(l)));
    defect = std::max(defect, std::abs(at(-l) - std::conj(at(l))));
  }
  return scale > 0.0 ? defect / scale : 0.0;
}

SpectralField1D& SpectralField1D::operator+=(const SpectralField1D& o) {
  require_same(ny(), o.ny());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

SpectralField1D& SpectralField1D::operator-=(const SpectralField1D& o) {
  require_same(ny(), o.ny());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  return *this;
}

SpectralField1D& SpectralField1D::operator*=(cplx s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

}  // namespace fracshear
