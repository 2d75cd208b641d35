#include "fracshear/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Dense>

#include "fracshear/errors.hpp"

namespace fracshear {

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ShapeError("fit_line: x and y differ in length");
  if (x.size() < 2) throw DataError("fit_line: need at least two points");
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw DataError("fit_line: abscissae are all equal");
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (f.slope * x[i] + f.intercept);
    ss += r * r;
  }
  f.rms_residual = std::sqrt(ss / n);
  return f;
}

LineFit fit_loglog(std::span<const double> x, std::span<const double> y) {
  std::vector<double> lx(x.size()), ly(y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0)) throw DataError("fit_loglog: nonpositive abscissa");
    lx[i] = std::log(x[i]);
  }
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (!(y[i] > 0.0)) throw DataError("fit_loglog: nonpositive ordinate");
    ly[i] = std::log(y[i]);
  }
  return fit_line(lx, ly);
}

QuadratureRule gauss_legendre(int q, double a, double b) {
  if (q < 1) throw ParameterError("gauss_legendre: need at least one node");
  // Jacobi matrix of the Legendre recurrence; nodes are its eigenvalues and
  // weights 2·(first eigenvector component)².
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(q, q);
  for (int i = 1; i < q; ++i) {
    const double beta = i / std::sqrt(4.0 * i * i - 1.0);
    j(i, i - 1) = beta;
    j(i - 1, i) = beta;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(j);
  QuadratureRule rule;
  rule.nodes.resize(q);
  rule.weights.resize(q);
  const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
  for (int i = 0; i < q; ++i) {
    const double v = es.eigenvectors()(0, i);
    rule.nodes[i] = mid + half * es.eigenvalues()(i);
    rule.weights[i] = 2.0 * v * v * half;
  }
  return rule;
}

std::vector<double> logspace(double a, double b, int n) {
  if (!(a > 0.0 && b > 0.0) || n < 2) throw ParameterError("logspace: need positive endpoints and n >= 2");
  std::vector<double> v(n);
  const double la = std::log(a), lb = std::log(b);
  for (int i = 0; i < n; ++i) v[i] = std::exp(la + (lb - la) * i / (n - 1));
  v.front() = a;
  v.back() = b;
  return v;
}

Summary summarize(std::span<const double> v) {
  if (v.empty()) throw DataError("summarize: empty sample");
  Summary s;
  const double n = static_cast<double>(v.size());
  s.mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
  double var = 0.0;
  for (double x : v) var += (x - s.mean) * (x - s.mean);
  var /= n;
  s.cv = s.mean != 0.0 ? std::sqrt(var) / std::abs(s.mean) : 0.0;
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  s.min = *lo;
  s.max = *hi;
  return s;
}

}  // namespace fracshear
