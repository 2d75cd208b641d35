#include "fracshear/pseudospectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <Eigen/LU>
#include <Eigen/SVD>
#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include "fracshear/errors.hpp"
#include "fracshear/stats.hpp"

namespace fracshear {

namespace {

constexpr int kDenseLimit = 256;
constexpr Eigen::Index kBandLimit = 16;  // half-bandwidth up to which the sparse path is used

double sigma_min_diagonal(const ModeOperator& op, double lambda) {
  double best = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < op.dim(); ++i) best = std::min(best, std::abs(op.matrix(i, i) - cplx{0.0, lambda}));
  return best;
}

double sigma_min_dense(const Eigen::MatrixXcd& a) {
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(a);
  return svd.singularValues()(svd.singularValues().size() - 1);
}

// Inverse iteration on (A*A)⁻¹ with one LU factorization of A.
double sigma_min_shift_invert(const Eigen::MatrixXcd& a) {
  const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(a);
  Eigen::VectorXcd x = Eigen::VectorXcd::Ones(a.rows()).normalized();
  double mu = 0.0;
  for (int it = 0; it < 2000; ++it) {
    Eigen::VectorXcd y = lu.solve(lu.adjoint().solve(x));
    const double next = y.norm();
    if (!std::isfinite(next)) throw NumericalError("sigma_min: shift-invert iteration diverged");
    x = y / next;
    if (it > 3 && std::abs(next - mu) <= 1e-14 * next) {
      mu = next;
      break;
    }
    mu = next;
  }
  return 1.0 / std::sqrt(mu);
}

Eigen::Index half_bandwidth(const Eigen::MatrixXcd& a) {
  Eigen::Index b = 0;
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (a(i, j) != cplx{} && std::abs(i - j) > b) b = std::abs(i - j);
  return b;
}

// Same iteration with sparse LU factors of A and A*; O(L·b) per sweep for banded A.
double sigma_min_banded(const Eigen::MatrixXcd& a) {
  using Sparse = Eigen::SparseMatrix<cplx>;
  const Sparse s = a.sparseView();
  const Sparse sh = s.adjoint();
  Eigen::SparseLU<Sparse> lu, luh;
  lu.compute(s);
  luh.compute(sh);
  if (lu.info() != Eigen::Success || luh.info() != Eigen::Success) throw NumericalError("sigma_min: sparse factorization failed");
  Eigen::VectorXcd x = Eigen::VectorXcd::Ones(a.rows()).normalized();
  double mu = 0.0;
  for (int it = 0; it < 5000; ++it) {
    Eigen::VectorXcd y = lu.solve(luh.solve(x));
    const double next = y.norm();
    if (!std::isfinite(next)) throw NumericalError("sigma_min: banded iteration diverged");
    x = y / next;
    if (it > 3 && std::abs(next - mu) <= 1e-14 * next) {
      mu = next;
      break;
    }
    mu = next;
  }
  return 1.0 / std::sqrt(mu);
}

}  // namespace

double sigma_min(const ModeOperator& op, double lambda) {
  if (!std::isfinite(lambda)) throw ParameterError("sigma_min: lambda must be finite");
  if (op.diagonal) return sigma_min_diagonal(op, lambda);
  Eigen::MatrixXcd a = op.matrix;
  a.diagonal().array() -= cplx{0.0, lambda};
  if (op.dim() > 4 * kBandLimit && half_bandwidth(op.matrix) <= kBandLimit) return sigma_min_banded(a);
  return op.L <= kDenseLimit ? sigma_min_dense(a) : sigma_min_shift_invert(a);
}

std::vector<double> sigma_min_scan_serial(const ModeOperator& op, std::span<const double> lambdas) {
  std::vector<double> out(lambdas.size());
  for (std::size_t i = 0; i < lambdas.size(); ++i) out[i] = sigma_min(op, lambdas[i]);
  return out;
}

std::vector<double> sigma_min_scan(const ModeOperator& op, std::span<const double> lambdas) {
  std::vector<double> out(lambdas.size());
  const auto n = static_cast<std::ptrdiff_t>(lambdas.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = sigma_min(op, lambdas[i]);
  return out;
}

PsiResult psi_bound(const ShearProfile& u, int k, double nu, double alpha, int L, const PsiOptions& opts) {
  if (opts.grid_points < 3) throw ParameterError("psi_bound: need at least 3 grid points");
  const auto op = build_mode_operator(u, k, nu, alpha, L);
  PsiResult res;
  res.k = k;
  res.nu = nu;
  res.alpha = alpha;
  res.L = L;

  const double kk = static_cast<double>(k);
  const double margin = nu * std::pow(std::abs(kk), alpha) + 0.1 * (u.max_value() - u.min_value());
  double lo = kk * (u.min_value() - margin), hi = kk * (u.max_value() + margin);
  if (lo > hi) std::swap(lo, hi);
  const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
  const int ng = opts.grid_points;
  std::vector<double> grid(ng);
  for (int i = 0; i < ng; ++i) grid[i] = mid + half * (2.0 * i - (ng - 1)) / (ng - 1);
  const auto sig = sigma_min_scan(op, grid);
  for (int i = 0; i < ng; ++i) {
    if (!std::isfinite(sig[i])) throw NumericalError("psi_bound: non-finite singular value at lambda " + std::to_string(grid[i]));
    res.trace.push_back({grid[i], sig[i]});
  }

  // local minima of the grid, best first
  std::vector<int> minima;
  for (int i = 0; i < ng; ++i) {
    const bool left = i == 0 || sig[i] <= sig[i - 1];
    const bool right = i == ng - 1 || sig[i] <= sig[i + 1];
    if (left && right) minima.push_back(i);
  }
  std::sort(minima.begin(), minima.end(), [&](int a, int b) { return sig[a] < sig[b]; });
  if (static_cast<int>(minima.size()) > opts.refine_candidates) minima.resize(opts.refine_candidates);
  res.coarse_min = sig[minima.front()];

  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int i : minima) {
    double a = grid[std::max(i - 1, 0)], b = grid[std::min(i + 1, ng - 1)];
    const double tol = opts.refine_width * (b - a);
    double c = b - invphi * (b - a), d = a + invphi * (b - a);
    double fc = sigma_min(op, c), fd = sigma_min(op, d);
    res.trace.push_back({c, fc});
    res.trace.push_back({d, fd});
    while (b - a > tol) {
      if (fc < fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - invphi * (b - a);
        fc = sigma_min(op, c);
        res.trace.push_back({c, fc});
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + invphi * (b - a);
        fd = sigma_min(op, d);
        res.trace.push_back({d, fd});
      }
    }
  }

  const auto best = std::min_element(res.trace.begin(), res.trace.end(),
                                     [](const PsiSample& x, const PsiSample& y) { return x.sigma < y.sigma; });
  if (!std::isfinite(best->sigma)) throw NumericalError("psi_bound: search produced a non-finite minimum");
  res.psi = best->sigma;
  res.lambda_star = best->lambda;

  if (opts.check_convergence) {
    const auto op2 = build_mode_operator(u, k, nu, alpha, 2 * L);
    res.psi_2L = sigma_min(op2, res.lambda_star);
    res.converged = std::abs(res.psi - res.psi_2L) <= opts.convergence_tol * res.psi_2L;
  } else {
    res.psi_2L = res.psi;
    res.converged = true;
  }
  return res;
}

GearhartPrussReport gearhart_pruss_check(const ShearProfile& u, int k, double nu, double alpha, int L,
                                         std::span<const double> times, std::optional<double> psi) {
  GearhartPrussReport rep;
  rep.psi = psi ? *psi : psi_bound(u, k, nu, alpha, L).psi;
  const auto op = build_mode_operator(u, k, nu, alpha, L);
  for (double t : times) {
    const double nrm = semigroup_norm(op, t);
    const double bound = std::exp(-t * rep.psi + std::numbers::pi / 2.0);
    rep.entries.push_back({t, nrm, bound});
    rep.max_ratio = std::max(rep.max_ratio, nrm / bound);
    if (nrm > bound * (1.0 + 1e-6)) ++rep.violations;
  }
  return rep;
}

PsiScaling psi_scaling_fit(std::span<const PsiResult> results) {
  if (results.size() < 4) throw DataError("psi_scaling_fit: need at least 4 results, got " + std::to_string(results.size()));
  bool same_nu = true, same_k = true, same_alpha = true;
  for (const auto& r : results) {
    same_nu = same_nu && r.nu == results.front().nu;
    same_k = same_k && std::abs(r.k) == std::abs(results.front().k);
    same_alpha = same_alpha && r.alpha == results.front().alpha;
  }
  if (!same_alpha || same_nu == same_k)
    throw DataError("psi_scaling_fit: exactly one of nu or k must vary (alpha fixed)");
  std::vector<double> x, y;
  for (const auto& r : results) {
    x.push_back(same_k ? r.nu : std::abs(static_cast<double>(r.k)));
    y.push_back(r.psi);
  }
  const auto line = fit_loglog(x, y);
  PsiScaling s;
  (same_k ? s.exponent_nu : s.exponent_k) = line.slope;
  s.prefactor = std::exp(line.intercept);
  s.rms_residual = line.rms_residual;
  return s;
}

}  // namespace fracshear
