#include "fracshear/linear_dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/SVD>

#include "fracshear/errors.hpp"
#include "fracshear/expm.hpp"
#include "fracshear/kernels.hpp"
#include "fracshear/spectral_ops.hpp"
#include "fracshear/stats.hpp"

namespace fracshear {

namespace {

void check_nu_alpha(double nu, double alpha) {
  if (!(nu > 0.0)) throw ParameterError("nu must be positive, got " + std::to_string(nu));
  if (!(alpha > 0.0 && alpha <= 2.0)) throw ParameterError("alpha must lie in (0,2], got " + std::to_string(alpha));
}

Eigen::VectorXd lambda_y_diag(int L, double s) {
  Eigen::VectorXd d(2 * L + 1);
  for (int i = 0; i <= 2 * L; ++i) {
    const int l = i - L;
    d(i) = l == 0 ? 0.0 : std::pow(std::abs(static_cast<double>(l)), s);
  }
  return d;
}

}  // namespace

ModeOperator mode_operator_unchecked(const ShearProfile& u, int k, double nu, double alpha, int L) {
  ModeOperator op;
  op.k = k;
  op.nu = nu;
  op.alpha = alpha;
  op.L = L;
  op.diagonal = u.is_constant() || k == 0;
  const int n = 2 * L + 1;
  op.matrix = Eigen::MatrixXcd::Zero(n, n);
  const cplx ik{0.0, static_cast<double>(k)};
  const double k2 = static_cast<double>(k) * k;
  for (int i = 0; i < n; ++i) {
    const double l = static_cast<double>(i - L);
    op.matrix(i, i) = nu * std::pow(k2 + l * l, 0.5 * alpha);
  }
  if (k != 0) {
    const int bw = std::min(u.bandwidth(), 2 * L);
    for (int d = -bw; d <= bw; ++d) {
      const cplx c = ik * u.coeff(d);
      if (c == cplx{}) continue;
      for (int j = std::max(0, -d); j < n && j + d < n; ++j) op.matrix(j + d, j) += c;
    }
  }
  return op;
}

ModeOperator build_mode_operator(const ShearProfile& u, int k, double nu, double alpha, int L) {
  if (k == 0) throw ParameterError("build_mode_operator: k = 0 has no advection; use the 1D diffusion multiplier");
  check_nu_alpha(nu, alpha);
  if (L < 4) throw ParameterError("build_mode_operator: truncation L must be at least 4");
  return mode_operator_unchecked(u, k, nu, alpha, L);
}

Eigen::MatrixXcd propagator(const ModeOperator& op, double t) {
  if (!(t >= 0.0)) throw ParameterError("propagator: time must be nonnegative");
  const Eigen::Index n = op.dim();
  if (t == 0.0) return Eigen::MatrixXcd::Identity(n, n);
  if (op.diagonal) {
    Eigen::VectorXcd d(n);
    for (Eigen::Index i = 0; i < n; ++i) d(i) = std::exp(-t * op.matrix(i, i));
    return d.asDiagonal();
  }
  return expm(-t * op.matrix);
}

Eigen::VectorXcd propagate_mode(const ModeOperator& op, const Eigen::VectorXcd& g0, double t) {
  if (g0.size() != op.dim()) throw ShapeError("propagate_mode: vector length does not match operator");
  return propagator(op, t) * g0;
}

double spectral_norm(const Eigen::MatrixXcd& a) {
  if (a.size() == 0) return 0.0;
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(a);
  return svd.singularValues()(0);
}

double semigroup_norm(const ModeOperator& op, double t) {
  const auto e = propagator(op, t);
  if (op.diagonal) return e.diagonal().cwiseAbs().maxCoeff();
  return spectral_norm(e);
}

double semigroup_norm_nonzero(const ShearProfile& u, double nu, double alpha, double t, int k_max, int L) {
  if (k_max < 1) throw ParameterError("semigroup_norm_nonzero: k_max must be at least 1");
  double sup = 0.0;
  // k and −k are complex conjugate operators with equal norms
  for (int k = 1; k <= k_max; ++k) sup = std::max(sup, semigroup_norm(build_mode_operator(u, k, nu, alpha, L), t));
  return sup;
}

DecayFit fit_decay_rate(std::span<const double> t, std::span<const double> norms) {
  if (t.size() != norms.size()) throw ShapeError("fit_decay_rate: times and norms differ in length");
  if (t.size() < 8) throw DataError("fit_decay_rate: need at least 8 samples, got " + std::to_string(t.size()));
  std::vector<double> logn(norms.size());
  for (std::size_t i = 0; i < norms.size(); ++i) {
    if (!(norms[i] > 0.0) || !std::isfinite(norms[i]))
      throw DataError("fit_decay_rate: sample " + std::to_string(i) + " is not a positive finite norm");
    logn[i] = std::log(norms[i]);
  }
  const auto line = fit_line(t, logn);
  DecayFit f;
  f.rate = -line.slope;
  f.prefactor = std::exp(line.intercept);
  f.t_a = t.front();
  f.t_b = t.back();
  f.residual = line.rms_residual;
  f.samples = t.size();
  return f;
}

DecayMeasurement measure_decay(const ModeOperator& op, const DecayOptions& opts) {
  if (opts.samples < 8) throw ParameterError("measure_decay: need at least 8 samples");
  if (!(opts.norm_floor > 0.0 && opts.norm_floor < 1.0)) throw ParameterError("measure_decay: floor must lie in (0,1)");

  // Bracket the time where the norm crosses the floor by repeated squaring.
  double T = 1.0;
  Eigen::MatrixXcd e = propagator(op, T);
  double nT = spectral_norm(e);
  while (nT < opts.norm_floor) {
    T *= 0.5;
    e = propagator(op, T);
    nT = spectral_norm(e);
    if (T < 1e-12) throw NumericalError("measure_decay: decay too fast to resolve");
  }
  double prevT = T, prevN = nT;
  for (int it = 0; nT >= opts.norm_floor; ++it) {
    if (it > 80) throw NumericalError("measure_decay: norm does not reach the floor");
    prevT = T;
    prevN = nT;
    e = e * e;
    T *= 2.0;
    nT = spectral_norm(e);
  }

  DecayMeasurement m;
  m.rate_guess = std::log(prevN / nT) / (T - prevT);
  if (!(m.rate_guess > 0.0) || !std::isfinite(m.rate_guess))
    throw NumericalError("measure_decay: two-point rate estimate is not positive");

  const double t_a = 2.0 / m.rate_guess;
  double t_b = prevT + std::log(prevN / opts.norm_floor) / m.rate_guess;
  if (t_b <= t_a) t_b = 2.0 * t_a;
  const double h = (t_b - t_a) / (opts.samples - 1);

  Eigen::MatrixXcd cur = propagator(op, t_a);
  const Eigen::MatrixXcd step = propagator(op, h);
  for (int i = 0; i < opts.samples; ++i) {
    if (i > 0) cur = step * cur;
    const double nrm = op.diagonal ? cur.diagonal().cwiseAbs().maxCoeff() : spectral_norm(cur);
    m.t.push_back(t_a + h * i);
    m.norm.push_back(nrm);
  }
  m.fit = fit_decay_rate(m.t, m.norm);
  return m;
}

double integrated_dissipation(const ModeOperator& op, double s, double t, int panels) {
  if (!(s >= 0.0 && t >= s)) throw ParameterError("integrated_dissipation: need 0 <= s <= t");
  if (panels < 1) throw ParameterError("integrated_dissipation: need at least one panel");
  Eigen::VectorXd w(op.dim());
  const double k2 = static_cast<double>(op.k) * op.k;
  for (Eigen::Index i = 0; i < op.dim(); ++i) {
    const double l = op.mode(i);
    w(i) = std::pow(k2 + l * l, 0.25 * op.alpha);
  }
  const double width = (t - s) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const auto rule = gauss_legendre(8, s + width * p, s + width * (p + 1));
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
      const double nrm = spectral_norm(w.asDiagonal() * propagator(op, rule.nodes[j]));
      total += rule.weights[j] * nrm * nrm;
    }
  }
  return op.nu * total;
}

SpectralField2D commutator_R(const SpectralField2D& f, const ShearProfile& u, double alpha) {
  if (!(alpha > 0.0 && alpha <= 2.0)) throw ParameterError("commutator_R: alpha must lie in (0,2]");
  const auto samples = u.sample(f.grid().ny());
  auto r = lambda_y_power(advection_term(f, samples), 0.5 * alpha);
  r -= advection_term(lambda_y_power(f, 0.5 * alpha), samples);
  return r;
}

Eigen::MatrixXcd commutator_matrix(const ShearProfile& u, int k, double alpha, int L) {
  const int n = 2 * L + 1;
  const Eigen::VectorXd d = lambda_y_diag(L, 0.5 * alpha);
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(n, n);
  const cplx ik{0.0, static_cast<double>(k)};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const cplx t = u.coeff(i - j);
      if (t != cplx{}) c(i, j) = ik * (d(i) - d(j)) * t;
    }
  return c;
}

double duhamel_identity_check(const SpectralField2D& f0, const ShearProfile& u, double nu, double alpha, double t,
                              int q, int L) {
  check_nu_alpha(nu, alpha);
  if (!(t >= 0.0)) throw ParameterError("duhamel_identity_check: time must be nonnegative");
  if (q < 1) throw ParameterError("duhamel_identity_check: need at least one quadrature node");
  if (L < 1) throw ParameterError("duhamel_identity_check: truncation must be positive");
  const auto& g = f0.grid();
  double scale = 0.0, zero_col = 0.0;
  for (const auto& c : f0.coeffs()) scale = std::max(scale, std::abs(c));
  for (std::size_t j = 0; j < g.ny(); ++j) zero_col = std::max(zero_col, std::abs(f0(0, j)));
  if (zero_col > 1e-13 * scale) throw PreconditionError("duhamel_identity_check: f0 has k = 0 content");

  const int n = 2 * L + 1;
  const int lmax = std::min(L, static_cast<int>(g.ny() / 2) - 1);
  const Eigen::VectorXd d = lambda_y_diag(L, 0.5 * alpha);
  const Eigen::VectorXd dinv = lambda_y_diag(L, -0.5 * alpha);
  const auto rule = gauss_legendre(q, 0.0, t);

  double num = 0.0, den = 0.0;
  for (std::size_t i = 1; i < g.nx(); ++i) {
    const int k = g.kx(i);
    Eigen::VectorXcd gk = Eigen::VectorXcd::Zero(n);
    bool any = false;
    for (int l = -lmax; l <= lmax; ++l) {
      const cplx c = f0.at(k, l);
      gk(l + L) = cplx{0.0, static_cast<double>(l)} * c;
      any = any || c != cplx{};
    }
    if (!any) continue;

    const auto op = mode_operator_unchecked(u, k, nu, alpha, L);
    const auto r = commutator_matrix(u, k, alpha, L);
    const Eigen::VectorXcd v = dinv.asDiagonal() * gk;

    const Eigen::VectorXcd lhs = propagate_mode(op, gk, t);
    Eigen::VectorXcd rhs = d.asDiagonal() * propagate_mode(op, v, t);
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
      const double tau = rule.nodes[j];
      rhs += rule.weights[j] * propagate_mode(op, r * propagate_mode(op, v, tau), t - tau);
    }
    num += (lhs - rhs).squaredNorm();
    den += lhs.squaredNorm();
  }
  if (den == 0.0) return 0.0;
  return std::sqrt(num / den);
}

}  // namespace fracshear
