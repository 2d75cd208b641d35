#include "fracshear/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fracshear/errors.hpp"
#include "fracshear/fft.hpp"
#include "fracshear/loops.hpp"
#include "fracshear/spectral_ops.hpp"

namespace fracshear {

namespace {

void check_params(double alpha, double nu) {
  if (!(alpha > 0.0 && alpha <= 2.0)) throw ParameterError("alpha must lie in (0,2], got " + std::to_string(alpha));
  if (!(nu > 0.0)) throw ParameterError("nu must be positive, got " + std::to_string(nu));
}

}  // namespace

SpectralField1D kernel_b1(const SpectralField1D& n0) {
  SpectralField1D out(n0.ny());
  const int h = static_cast<int>(n0.ny() / 2);
  for (int l = -h; l < h; ++l) {
    if (l == 0) continue;  // removes n̄
    // ∂y(−∂yy)⁻¹ has symbol il/l² = i/l
    out.at(l) = cplx{0.0, 1.0 / static_cast<double>(l)} * n0.at(l);
  }
  return out;
}

std::pair<SpectralField2D, SpectralField2D> kernel_b2(const SpectralField2D& nneq) {
  // round-off in the k = 0 column (e.g. from sampling) is tolerated and discarded
  double scale = 0.0, zero_col = 0.0;
  for (std::size_t i = 0; i < nneq.coeffs().size(); ++i) scale = std::max(scale, std::abs(nneq.coeffs()[i]));
  for (std::size_t j = 0; j < nneq.grid().ny(); ++j) zero_col = std::max(zero_col, std::abs(nneq(0, j)));
  if (zero_col > 1e-13 * scale) throw PreconditionError("kernel_b2: input has nonzero k = 0 content");
  const auto psi = inv_laplacian_meanzero(project_nonzero(nneq));
  return grad(psi);
}

KernelField attractive_kernel(const SpectralField2D& n) {
  const auto psi = inv_laplacian_meanzero(n);
  auto [bx, by] = grad(psi);
  return KernelField{std::move(bx), std::move(by), kernel_b1(project_zero(n))};
}

SpectralField2D product(const SpectralField2D& a, const SpectralField2D& b) {
  const auto pa = to_physical(dealias(a));
  const auto pb = to_physical(dealias(b));
  PhysicalField2D pc(a.grid());
  loops::omp::multiply(pa.values, pb.values, pc.values);
  auto out = to_spectral(pc);
  dealias_in_place(out);
  return out;
}

SpectralField1D product_1d(const SpectralField1D& a, const SpectralField1D& b) {
  const auto pa = to_physical(dealias_1d(a));
  const auto pb = to_physical(dealias_1d(b));
  PhysicalField1D pc(a.ny());
  loops::omp::multiply(pa.values, pb.values, pc.values);
  return dealias_1d(to_spectral(pc));
}

SpectralField2D advection_term(const SpectralField2D& n, std::span<const double> u_on_grid) {
  const auto& g = n.grid();
  if (u_on_grid.size() != g.ny()) throw ShapeError("advection_term: shear samples do not match ny");
  auto phys = to_physical(ddx(dealias(n)));
  for (std::size_t i = 0; i < g.nx(); ++i)
    for (std::size_t j = 0; j < g.ny(); ++j) phys(i, j) *= u_on_grid[j];
  auto out = to_spectral(phys);
  dealias_in_place(out);
  return out;
}

SpectralField2D advection_term(const SpectralField2D& n, const ShearProfile& u) {
  const auto samples = u.sample(n.grid().ny());
  return advection_term(n, samples);
}

SpectralField2D aggregation_divergence(const SpectralField2D& n) {
  const auto nd = dealias(n);
  const auto b = attractive_kernel(nd);
  return dealias(div(product(nd, b.bx), product(nd, b.by)));
}

SpectralField2D nonlinear_rhs(const SpectralField2D& n, const ShearProfile& u, double alpha, double nu) {
  check_params(alpha, nu);
  const auto nd = dealias(n);
  SpectralField2D rhs = advection_term(nd, u);
  rhs *= -1.0;
  rhs.axpy(-nu, frac_laplacian(nd, alpha));
  rhs.axpy(-nu, aggregation_divergence(nd));
  rhs(0, 0) = cplx{};
  return rhs;
}

SpectralField1D mode_rhs_zero(const SpectralField1D& n0, const SpectralField2D& nneq, double alpha, double nu) {
  check_params(alpha, nu);
  const auto n0d = dealias_1d(n0);
  const auto nnd = dealias(nneq);
  const auto b1 = kernel_b1(n0d);
  const auto [b2x, b2y] = kernel_b2(nnd);

  // −ν(−∂yy)^{α/2}n⁰ − ν∂y(n⁰B₁) − ν(∇·(n≠B₂))⁰
  SpectralField1D rhs = frac_laplacian_1d(n0d, alpha);
  rhs += ddy_1d(product_1d(n0d, b1));
  rhs += project_zero(div(product(nnd, b2x), product(nnd, b2y)));
  rhs *= -nu;
  rhs.at(0) = cplx{};
  return rhs;
}

SpectralField2D mode_rhs_nonzero(const SpectralField1D& n0, const SpectralField2D& nneq, const ShearProfile& u,
                                 double alpha, double nu) {
  check_params(alpha, nu);
  const auto& g = nneq.grid();
  const auto n0d = dealias_1d(n0);
  const auto nnd = dealias(nneq);
  const double nbar = n0d.mean();

  const auto n0_2d = embed_zero(n0d, g);
  const auto b1_2d = embed_zero(kernel_b1(n0d), g);
  const auto [b2x, b2y] = kernel_b2(nnd);
  auto n0_minus_mean = n0_2d;
  n0_minus_mean(0, 0) -= nbar;

  SpectralField2D bracket = product(ddy(n0_2d), b2y);       // ∇n⁰·B₂ (∂x n⁰ = 0)
  bracket += product(ddy(nnd), b1_2d);                        // ∂y n≠ B₁
  bracket += project_nonzero(div(product(nnd, b2x), product(nnd, b2y)));  // (∇·(n≠B₂))≠
  bracket -= product(n0_2d, nnd);                              // n⁰n≠
  bracket -= product(nnd, n0_minus_mean);                      // n≠(n⁰ − n̄)

  SpectralField2D rhs = advection_term(nnd, u);
  rhs += nu * frac_laplacian(nnd, alpha);
  rhs += nu * bracket;
  rhs *= -1.0;
  return rhs;
}

}  // namespace fracshear
