#include "fracshear/shear.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fracshear/errors.hpp"
#include "fracshear/fft.hpp"

namespace fracshear {

ShearProfile::ShearProfile(std::string name, std::vector<double> samples)
    : name_(std::move(name)), samples_(std::move(samples)) {
  const std::size_t ny = samples_.size();
  PhysicalField1D phys(ny);
  phys.values = samples_;
  auto spec = to_spectral(phys);  // validates ny
  coeffs_ = spec.coeffs();
  coeffs_[ny / 2] = cplx{};  // Nyquist mode is not representable as a real cosine pair
  // enforce exact Hermitian symmetry and a real mean
  const int h = static_cast<int>(ny / 2);
  coeffs_[0] = cplx{coeffs_[0].real(), 0.0};
  double scale = 0.0;
  for (int l = 1; l < h; ++l) {
    const cplx avg = 0.5 * (spec.at(l) + std::conj(spec.at(-l)));
    coeffs_[TorusGrid::storage_index(l, ny)] = avg;
    coeffs_[TorusGrid::storage_index(-l, ny)] = std::conj(avg);
    scale = std::max(scale, std::abs(avg));
  }
  scale = std::max(scale, std::abs(coeffs_[0]));
  bandwidth_ = 0;
  for (int l = 1; l < h; ++l) {
    auto& c = coeffs_[TorusGrid::storage_index(l, ny)];
    if (std::abs(c) <= 1e-14 * scale) {
      c = cplx{};
      coeffs_[TorusGrid::storage_index(-l, ny)] = cplx{};
    } else {
      bandwidth_ = l;
    }
  }
  const auto fine = sample(std::max<std::size_t>(4096, 16 * ny));
  min_ = *std::min_element(fine.begin(), fine.end());
  max_ = *std::max_element(fine.begin(), fine.end());
}

ShearProfile ShearProfile::from_samples(std::string name, std::vector<double> samples) {
  return ShearProfile(std::move(name), std::move(samples));
}

ShearProfile ShearProfile::named(const std::string& name, std::size_t ny) {
  std::vector<double> s(ny);
  auto fill = [&](auto fn) {
    for (std::size_t j = 0; j < ny; ++j) s[j] = fn(-kPi + kTwoPi * static_cast<double>(j) / static_cast<double>(ny));
  };
  if (name == "cos" || name == "kolmogorov") {
    fill([](double y) { return std::cos(y); });
  } else if (name == "cos2") {
    fill([](double y) { return std::cos(2.0 * y); });
  } else if (name == "sin3") {
    fill([](double y) { return std::pow(std::sin(y), 3); });
  } else if (name == "zero") {
    fill([](double) { return 0.0; });
  } else if (name == "const") {
    fill([](double) { return 1.0; });
  } else {
    throw ParameterError("unknown shear profile '" + name + "' (expected cos, cos2, sin3, zero, const)");
  }
  return ShearProfile(name == "kolmogorov" ? "cos" : name, std::move(s));
}

cplx ShearProfile::coeff(int l) const {
  const int h = static_cast<int>(samples_.size() / 2);
  if (l <= -h || l >= h) return cplx{};
  return coeffs_[TorusGrid::storage_index(l, samples_.size())];
}

double ShearProfile::derivative(double y, int order) const {
  cplx acc = coeff(0) * (order == 0 ? 1.0 : 0.0);
  for (int l = 1; l <= bandwidth_; ++l) {
    const cplx il{0.0, static_cast<double>(l)};
    const cplx e = std::exp(cplx{0.0, l * y});
    acc += std::pow(il, order) * coeff(l) * e + std::pow(-il, order) * coeff(-l) * std::conj(e);
  }
  return acc.real();
}

std::vector<double> ShearProfile::sample(std::size_t ny) const {
  std::vector<double> out(ny);
  for (std::size_t j = 0; j < ny; ++j) out[j] = value(-kPi + kTwoPi * static_cast<double>(j) / static_cast<double>(ny));
  return out;
}

namespace {

constexpr int kMaxDerivativeOrder = 8;

double wrap(double y) {
  double w = std::fmod(y + kPi, kTwoPi);
  if (w < 0) w += kTwoPi;
  return w - kPi;
}

double periodic_distance(double a, double b) {
  const double d = std::abs(wrap(a - b));
  return std::min(d, kTwoPi - d);
}

template <class F>
double bisect(F&& g, double a, double b) {
  double ga = g(a);
  for (int it = 0; it < 200 && b - a > 1e-15; ++it) {
    const double c = 0.5 * (a + b);
    const double gc = g(c);
    if (gc == 0.0) return c;
    if ((gc > 0) == (ga > 0)) {
      a = c;
      ga = gc;
    } else {
      b = c;
    }
  }
  return 0.5 * (a + b);
}

/// Roots of g on [−π, π) located by sign changes on n nodes, refined by bisection.
template <class F>
std::vector<double> sign_change_roots(F&& g, std::size_t n) {
  std::vector<double> roots;
  // nodes are offset from ±π so that a root on the seam is bracketed once
  const double h = kTwoPi / static_cast<double>(n);
  const double start = -kPi + 0.3819660112501051 * h;
  double y0 = start, g0 = g(y0);
  for (std::size_t i = 1; i <= n; ++i) {
    const double y1 = start + h * static_cast<double>(i);
    const double g1 = g(y1);
    if (g0 == 0.0) {
      roots.push_back(wrap(y0));
    } else if ((g0 > 0) != (g1 > 0) && g1 != 0.0) {
      roots.push_back(wrap(bisect(g, y0, y1)));
    }
    y0 = y1;
    g0 = g1;
  }
  return roots;
}

}  // namespace

FlatnessInfo detect_flatness_order(const ShearProfile& u) {
  if (u.is_constant()) throw PreconditionError("degenerate profile: u is constant, flatness order undefined");

  const double thresh = 1e-8 * u.max_abs();
  const std::size_t n_fine = std::max<std::size_t>(2048, 32 * u.resolution());
  FlatnessInfo info;

  // A critical point of multiplicity p (u' ~ y^p) is a sign change of u^{(j)}
  // for some j <= p at which all lower derivatives vanish.
  for (int j = 1; j <= kMaxDerivativeOrder; ++j) {
    auto g = [&](double y) { return u.derivative(y, j); };
    for (double y : sign_change_roots(g, n_fine)) {
      bool lower_vanish = true;
      for (int i = 1; i < j; ++i)
        if (std::abs(u.derivative(y, i)) > thresh) lower_vanish = false;
      if (!lower_vanish) continue;
      const bool seen = std::any_of(info.critical_points.begin(), info.critical_points.end(),
                                    [&](double c) { return periodic_distance(c, y) < 1e-6; });
      if (seen) continue;
      int order = kMaxDerivativeOrder + 1;
      for (int i = 2; i <= kMaxDerivativeOrder; ++i)
        if (std::abs(u.derivative(y, i)) > thresh) {
          order = i;
          break;
        }
      info.critical_points.push_back(y);
      info.orders.push_back(order);
    }
  }
  info.m = info.orders.empty() ? 1 : *std::max_element(info.orders.begin(), info.orders.end());

  // c₁: min over λ and δ of |u(y) − λ|/δ^m on the shells |y − y_j| = δ around
  // the level-set points and critical points.
  double c1 = std::numeric_limits<double>::infinity();
  const double lo = u.min_value(), hi = u.max_value();
  for (double delta : {0.05, 0.1, 0.2}) {
    const double dm = std::pow(delta, info.m);
    for (int q = 0; q <= 100; ++q) {
      const double lambda = lo + (hi - lo) * q / 100.0;
      auto level = [&](double y) { return u.value(y) - lambda; };
      std::vector<double> centers = sign_change_roots(level, n_fine / 4);
      centers.insert(centers.end(), info.critical_points.begin(), info.critical_points.end());
      for (double c : centers)
        for (double y : {c - delta, c + delta}) {
          const bool outside = std::all_of(centers.begin(), centers.end(), [&](double cc) {
            return periodic_distance(cc, y) >= delta - 1e-12;
          });
          if (outside) c1 = std::min(c1, std::abs(u.value(y) - lambda) / dm);
        }
    }
  }
  info.c1 = std::isfinite(c1) ? c1 : 0.0;
  return info;
}

}  // namespace fracshear
