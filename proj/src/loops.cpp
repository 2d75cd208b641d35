#include "fracshear/loops.hpp"

#include <cstddef>

namespace fracshear::loops {

namespace {

template <class Sym>
void apply_symbol_serial(std::span<cplx> data, std::span<const Sym> symbol) {
  for (std::size_t i = 0; i < data.size(); ++i) data[i] *= symbol[i];
}

template <class Sym>
void apply_symbol_omp(std::span<cplx> data, std::span<const Sym> symbol) {
  const auto n = static_cast<std::ptrdiff_t>(data.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) data[i] *= symbol[i];
}

void propagate_row(SpectralField2D& field, const Eigen::MatrixXcd& prop, std::size_t row, int band) {
  if (prop.size() == 0) return;
  const auto& g = field.grid();
  const int width = 2 * band + 1;
  Eigen::VectorXcd v(width);
  for (int l = -band; l <= band; ++l) v(l + band) = field(row, g.index_y(l));
  const Eigen::VectorXcd w = prop * v;
  for (int l = -band; l <= band; ++l) field(row, g.index_y(l)) = w(l + band);
}

}  // namespace

namespace serial {

void apply_symbol(std::span<cplx> data, std::span<const cplx> symbol) { apply_symbol_serial(data, symbol); }
void apply_symbol(std::span<cplx> data, std::span<const double> symbol) { apply_symbol_serial(data, symbol); }

void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out) {
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] * b[i];
}

void propagate_rows(SpectralField2D& field, std::span<const Eigen::MatrixXcd> propagators, int band) {
  for (std::size_t r = 0; r < propagators.size(); ++r) propagate_row(field, propagators[r], r, band);
}

}  // namespace serial

namespace omp {

void apply_symbol(std::span<cplx> data, std::span<const cplx> symbol) { apply_symbol_omp(data, symbol); }
void apply_symbol(std::span<cplx> data, std::span<const double> symbol) { apply_symbol_omp(data, symbol); }

void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out) {
  const auto n = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

void propagate_rows(SpectralField2D& field, std::span<const Eigen::MatrixXcd> propagators, int band) {
  const auto rows = static_cast<std::ptrdiff_t>(propagators.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t r = 0; r < rows; ++r)
    propagate_row(field, propagators[static_cast<std::size_t>(r)], static_cast<std::size_t>(r), band);
}

}  // namespace omp

}  // namespace fracshear::loops
