#include "fracshear/nonlinear_solver.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "fracshear/errors.hpp"
#include "fracshear/fft.hpp"
#include "fracshear/kernels.hpp"
#include "fracshear/linear_dynamics.hpp"
#include "fracshear/loops.hpp"
#include "fracshear/spectral_ops.hpp"
#include "fracshear/stats.hpp"

namespace fracshear {

std::string to_string(StepperKind s) { return s == StepperKind::IfRk2 ? "ifrk2" : "strang"; }

StepperKind stepper_from_string(const std::string& s) {
  if (s == "ifrk2" || s == "IF-RK2") return StepperKind::IfRk2;
  if (s == "strang" || s == "exact-linear-strang") return StepperKind::StrangExact;
  throw ParameterError("unknown stepper '" + s + "' (expected ifrk2 or strang)");
}

double SimConfig::effective_nu() const {
  if (!(alpha > 0.0 && alpha <= 2.0)) throw ParameterError("alpha must lie in (0,2], got " + std::to_string(alpha));
  if (nu > 0.0) return nu;
  if (A > 0.0) return 1.0 / A;
  throw ParameterError("either nu or A must be positive");
}

void SimConfig::validate() const {
  effective_nu();
  TorusGrid g(nx, ny);
  if (!(dt > 0.0)) throw ParameterError("dt must be positive");
  if (!(t_end >= 0.0)) throw ParameterError("t_end must be nonnegative");
  if (output_stride < 1) throw ParameterError("output_stride must be at least 1");
  if (!(monitor.dt_floor > 0.0)) throw ParameterError("dt_floor must be positive");
}

// ---- step context ---------------------------------------------------------

StepContext::StepContext(const SimConfig& cfg) : cfg_(cfg), nu_(cfg.effective_nu()), grid_(cfg.grid()) {
  u_grid_ = cfg_.advection ? cfg_.shear.sample(grid_.ny()) : std::vector<double>(grid_.ny(), 0.0);
  lambda_alpha_.resize(grid_.size());
  for (std::size_t i = 0; i < grid_.nx(); ++i)
    for (std::size_t j = 0; j < grid_.ny(); ++j) {
      const double k = grid_.kx(i), l = grid_.ky(j);
      lambda_alpha_[i * grid_.ny() + j] = std::pow(k * k + l * l, 0.5 * cfg_.alpha);
    }
}

const std::vector<double>& StepContext::diffusion_factor(double dt) {
  auto it = diffusion_cache_.find(dt);
  if (it != diffusion_cache_.end()) return it->second;
  std::vector<double> e(lambda_alpha_.size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = std::exp(-dt * nu_ * lambda_alpha_[i]);
  if (diffusion_cache_.size() > 64) diffusion_cache_.clear();
  return diffusion_cache_.emplace(dt, std::move(e)).first->second;
}

const std::vector<Eigen::MatrixXcd>& StepContext::band_propagators(double dt) {
  auto it = propagator_cache_.find(dt);
  if (it != propagator_cache_.end()) return it->second;
  const ShearProfile zero = ShearProfile::named("zero", grid_.ny());
  const ShearProfile& u = cfg_.advection ? cfg_.shear : zero;
  const int kc = grid_.kx_cut(), lc = grid_.ky_cut();
  std::vector<Eigen::MatrixXcd> props(grid_.nx());
  for (std::size_t i = 0; i < grid_.nx(); ++i) {
    const int k = grid_.kx(i);
    if (std::abs(k) > kc) continue;
    props[i] = propagator(mode_operator_unchecked(u, k, nu_, cfg_.alpha, lc), dt);
  }
  if (propagator_cache_.size() > 16) propagator_cache_.clear();
  return propagator_cache_.emplace(dt, std::move(props)).first->second;
}

SpectralField2D StepContext::aggregation_rhs(const SpectralField2D& n) const {
  if (!cfg_.nonlinearity) return SpectralField2D(n.grid());
  SpectralField2D r = aggregation_divergence(n);
  r *= -nu_;
  r(0, 0) = cplx{};
  return r;
}

SpectralField2D StepContext::explicit_rhs(const SpectralField2D& n) const {
  SpectralField2D r(n.grid());
  if (cfg_.advection) r.axpy(-1.0, advection_term(n, u_grid_));
  if (cfg_.nonlinearity) r.axpy(-nu_, aggregation_divergence(n));
  r(0, 0) = cplx{};
  return r;
}

// ---- steppers ---------------------------------------------------------------

namespace {

void require_finite(const SpectralField2D& f) {
  for (const auto& c : f.coeffs())
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) throw NumericalError("non-finite coefficient in state");
}

void scale_by(SpectralField2D& f, const std::vector<double>& factor) { loops::omp::apply_symbol(f.coeffs(), factor); }

}  // namespace

SimState step_ifrk2(const SimState& s, StepContext& ctx, double dt) {
  if (!(dt > 0.0)) throw ParameterError("step_ifrk2: dt must be positive");
  const auto& e = ctx.diffusion_factor(dt);
  const SpectralField2D k1 = ctx.explicit_rhs(s.n);

  SpectralField2D pred = s.n;
  pred.axpy(dt, k1);
  scale_by(pred, e);
  const SpectralField2D k2 = ctx.explicit_rhs(pred);

  SimState out{s.t + dt, s.n, s.step + 1, dt};
  out.n.axpy(0.5 * dt, k1);
  scale_by(out.n, e);
  out.n.axpy(0.5 * dt, k2);
  require_finite(out.n);
  return out;
}

SimState step_exact_linear_strang(const SimState& s, StepContext& ctx, double dt) {
  if (!(dt > 0.0)) throw ParameterError("step_exact_linear_strang: dt must be positive");
  const auto& props = ctx.band_propagators(0.5 * dt);
  const int band = s.n.grid().ky_cut();

  SimState out{s.t + dt, s.n, s.step + 1, dt};
  loops::omp::propagate_rows(out.n, props, band);
  if (ctx.config().nonlinearity) {
    const SpectralField2D g1 = ctx.aggregation_rhs(out.n);
    SpectralField2D pred = out.n;
    pred.axpy(dt, g1);
    const SpectralField2D g2 = ctx.aggregation_rhs(pred);
    out.n.axpy(0.5 * dt, g1);
    out.n.axpy(0.5 * dt, g2);
  }
  loops::omp::propagate_rows(out.n, props, band);
  require_finite(out.n);
  return out;
}

SimState step_ifrk2(const SimState& s, const SimConfig& cfg) {
  StepContext ctx(cfg);
  return step_ifrk2(s, ctx, cfg.dt);
}

SimState step_exact_linear_strang(const SimState& s, const SimConfig& cfg) {
  StepContext ctx(cfg);
  return step_exact_linear_strang(s, ctx, cfg.dt);
}

double adapt_dt(const SimState& s, const SimConfig& cfg) {
  const double kmax = static_cast<double>(s.n.grid().nx() / 2 - 1);
  double dt = cfg.dt;
  const double umax = cfg.advection ? cfg.shear.max_abs() : 0.0;
  if (umax > 0.0) dt = std::min(dt, 0.5 / (umax * kmax));
  if (cfg.nonlinearity) {
    const double linf = norms(s.n).linf;
    if (linf > 0.0) dt = std::min(dt, 0.2 / (cfg.effective_nu() * linf * kmax));
  }
  return dt;
}

// ---- diagnostics --------------------------------------------------------------

double tail_energy_fraction(const SpectralField2D& n) {
  const auto& g = n.grid();
  const double kc = g.kx_cut(), lc = g.ky_cut();
  double total = 0.0, tail = 0.0;
  for (std::size_t i = 0; i < g.nx(); ++i)
    for (std::size_t j = 0; j < g.ny(); ++j) {
      if (i == 0 && j == 0) continue;
      const double e = std::norm(n(i, j));
      total += e;
      const double r = std::max(std::abs(g.kx(i)) / kc, std::abs(g.ky(j)) / lc);
      if (r > 2.0 / 3.0) tail += e;
    }
  return total > 0.0 ? tail / total : 0.0;
}

MaxPrincipleReport max_principle_check(const SpectralField2D& n, double alpha) {
  if (!(alpha > 0.0 && alpha <= 2.0)) throw ParameterError("max_principle_check: alpha must lie in (0,2]");
  SpectralField2D f = n;
  f(0, 0) = cplx{};
  const auto phys = to_physical(f);
  const auto it = std::max_element(phys.values.begin(), phys.values.end());
  const std::size_t idx = static_cast<std::size_t>(it - phys.values.begin());
  MaxPrincipleReport rep;
  double scale = 0.0;
  for (const auto& c : f.coeffs()) scale = std::max(scale, std::abs(c));
  if (scale == 0.0 || !(*it > 0.0)) {
    rep.degenerate = true;
    return rep;
  }
  rep.max_value = *it;
  rep.lambda_at_max = to_physical(frac_laplacian(f, alpha)).values[idx];
  rep.ratio = rep.lambda_at_max * std::pow(l2_norm(f), alpha) / std::pow(rep.max_value, 1.0 + alpha);
  return rep;
}

DiagnosticsRow diagnose(const SimState& s, const SimConfig& cfg) {
  DiagnosticsRow r;
  r.t = s.t;
  r.step = s.step;
  r.dt = s.last_dt;
  const auto& n = s.n;
  r.mass = 4.0 * kPi * kPi * n(0, 0).real();
  const auto nm = norms(n);
  r.l1 = nm.l1;
  r.l2 = nm.l2;
  r.linf = nm.linf;
  const auto phys = to_physical(n);
  r.min_n = *std::min_element(phys.values.begin(), phys.values.end());
  const auto nneq = project_nonzero(n);
  const auto nzero = embed_zero(project_zero(n), n.grid());
  r.l2_nonzero = l2_norm(nneq);
  r.l2_zero = l2_norm(nzero);
  r.hs = hs_seminorm(n, 0.5 * cfg.alpha);
  r.hs_nonzero = hs_seminorm(nneq, 0.5 * cfg.alpha);
  r.zero_hdot = hs_seminorm(nzero, cfg.alpha - 1.0);
  r.h1 = h1_norm(n);
  r.tail_fraction = tail_energy_fraction(n);
  r.max_principle = max_principle_check(n, cfg.alpha).lambda_at_max;
  return r;
}

const std::vector<std::string>& DiagnosticsRecord::columns() {
  static const std::vector<std::string> c = {"t",          "step",   "dt",         "mass",     "l1",
                                             "l2",         "linf",   "l2_nonzero", "hs",       "hs_nonzero",
                                             "l2_zero",    "zero_hdot", "h1",      "energy_residual",
                                             "min_n",      "tail_fraction", "max_principle"};
  return c;
}

std::vector<double> DiagnosticsRecord::values(const DiagnosticsRow& r) const {
  return {r.t,       static_cast<double>(r.step), r.dt, r.mass, r.l1, r.l2, r.linf,
          r.l2_nonzero, r.hs, r.hs_nonzero, r.l2_zero, r.zero_hdot, r.h1, r.energy_residual, r.min_n,
          r.tail_fraction, r.max_principle};
}

void DiagnosticsRecord::write_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path);
  const auto& cols = columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << '\n' << std::setprecision(17);
  for (const auto& r : rows) {
    const auto v = values(r);
    for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
    out << '\n';
  }
}

std::string BlowupReport::to_json() const {
  nlohmann::json j;
  j["tripped"] = tripped;
  j["reason"] = reason;
  j["time"] = time;
  j["value"] = value;
  j["threshold"] = threshold;
  if (last) {
    nlohmann::json d;
    const DiagnosticsRecord rec;
    const auto v = rec.values(*last);
    for (std::size_t i = 0; i < v.size(); ++i)
      d[DiagnosticsRecord::columns()[i]] = std::isfinite(v[i]) ? nlohmann::json(v[i]) : nlohmann::json(nullptr);
    j["last_diagnostics"] = d;
  }
  return j.dump(2);
}

double energy_identity_residual(std::span<const SimState> window, const SimConfig& cfg) {
  if (window.size() < 3) throw DataError("energy_identity_residual: need at least 3 snapshots");
  const double h0 = window[1].t - window[0].t;
  if (!(h0 > 0.0)) throw DataError("energy_identity_residual: snapshots must advance in time");
  for (std::size_t i = 2; i < window.size(); ++i) {
    const double h = window[i].t - window[i - 1].t;
    if (std::abs(h - h0) > 1e-9 * h0) throw DataError("energy_identity_residual: snapshots are not uniformly spaced");
  }
  const std::size_t m = window.size() / 2;
  const auto& a = window[m - 1].n;
  const auto& b = window[m + 1].n;
  const auto& n = window[m].n;
  const double nu = cfg.effective_nu();
  const double la = l2_norm(a), lb = l2_norm(b);
  const double dedt = 0.5 * (lb * lb - la * la) / (window[m + 1].t - window[m - 1].t);
  const double hs = hs_seminorm(n, 0.5 * cfg.alpha);
  const double diss = nu * hs * hs;
  const double agg = cfg.nonlinearity ? nu * inner_product(n, aggregation_divergence(n)) : 0.0;
  const double scale = std::max({std::abs(dedt), std::abs(diss), std::abs(agg)});
  if (scale == 0.0) return 0.0;
  return std::abs(dedt + diss + agg) / scale;
}

// ---- driver -------------------------------------------------------------------

SimResult run_simulation(const SimConfig& cfg, const SpectralField2D& n0, const SnapshotCallback& on_snapshot) {
  cfg.validate();
  if (!(n0.grid() == cfg.grid())) throw ShapeError("run_simulation: initial data grid does not match the configuration");
  {
    const auto phys = to_physical(n0);
    const double mn = *std::min_element(phys.values.begin(), phys.values.end());
    if (mn < -1e-12) throw PreconditionError("run_simulation: initial data is negative on the grid (min " + std::to_string(mn) + ")");
    if (!(n0(0, 0).real() > 0.0)) throw PreconditionError("run_simulation: initial mass must be positive");
  }

  StepContext ctx(cfg);
  SimState state{0.0, dealias(n0), 0, 0.0};
  SimResult res{.record = {}, .final_state = state, .blowup = {}, .t0 = {}, .s0 = 0.0, .negativity_flag = false, .mass_drift = 0.0};
  const double mass0 = state.n(0, 0).real();
  const double linf0 = norms(state.n).linf;
  const double l2sq0 = std::pow(l2_norm(state.n), 2);
  double t_end = cfg.t_end;
  if (cfg.horizon_after_s0 > 0.0) t_end = std::max(t_end, cfg.horizon_after_s0);

  std::vector<SimState> window;  // last snapshots for the energy identity (fixed dt only)
  auto snapshot = [&](const SimState& s) {
    auto row = diagnose(s, cfg);
    if (row.min_n < -cfg.negativity_flag * linf0) res.negativity_flag = true;
    res.mass_drift = std::max(res.mass_drift, std::abs(row.mass - 4.0 * kPi * kPi * mass0) / (4.0 * kPi * kPi * mass0));
    res.record.rows.push_back(row);
    if (!cfg.adaptive) {
      window.push_back(s);
      if (window.size() > 3) window.erase(window.begin());
      if (window.size() == 3) {
        try {
          res.record.rows[res.record.rows.size() - 2].energy_residual = energy_identity_residual(window, cfg);
        } catch (const DataError&) {
          // the last step was shortened to land on t_end
        }
      }
    }
    if (on_snapshot) on_snapshot(s, res.record.rows.back());
  };
  auto trip = [&](const std::string& reason, double value, double threshold) {
    res.blowup.tripped = true;
    res.blowup.reason = reason;
    res.blowup.time = state.t;
    res.blowup.value = value;
    res.blowup.threshold = threshold;
  };

  snapshot(state);
  double next_output = cfg.output_every;
  const auto step = [&](const SimState& s, double dt) {
    return cfg.stepper == StepperKind::IfRk2 ? step_ifrk2(s, ctx, dt) : step_exact_linear_strang(s, ctx, dt);
  };

  // slack absorbs the round-off of accumulating t by repeated additions of dt
  const auto remaining = [&] { return t_end - state.t > 1e-10 * std::max(t_end, 1.0); };
  while (remaining() && state.step < cfg.max_steps) {
    double dt = cfg.adaptive ? adapt_dt(state, cfg) : cfg.dt;
    if (cfg.adaptive && dt < cfg.monitor.dt_floor) {
      trip("dt collapse", dt, cfg.monitor.dt_floor);
      break;
    }
    if (state.t + dt > t_end || t_end - (state.t + dt) <= 1e-10 * std::max(t_end, 1.0)) dt = t_end - state.t;

    std::optional<SimState> next;
    try {
      next = step(state, dt);
      if (cfg.adaptive) {
        const double base = l2_norm(state.n);
        while (l2_norm(next->n - state.n) > 0.1 * base) {
          dt *= 0.5;
          if (dt < cfg.monitor.dt_floor) break;
          next = step(state, dt);
        }
      }
    } catch (const NumericalError&) {
      trip("non-finite", 0.0, 0.0);
      break;
    }
    if (cfg.adaptive && dt < cfg.monitor.dt_floor) {
      trip("dt collapse", dt, cfg.monitor.dt_floor);
      break;
    }
    state = std::move(*next);

    if (cfg.clip_negative) {
      auto phys = to_physical(state.n);
      for (double& v : phys.values) v = std::max(v, 0.0);
      state.n = dealias(to_spectral(phys));
    }

    const double l2 = l2_norm(state.n);
    if (!res.t0 && l2 * l2 >= 4.0 * l2sq0) {
      res.t0 = state.t;
      res.s0 = 0.5 * state.t;
      if (cfg.horizon_after_s0 > 0.0) t_end = std::max(cfg.t_end, res.s0 + cfg.horizon_after_s0);
    }

    const double linf = norms(state.n).linf;
    const double tail = tail_energy_fraction(state.n);
    bool out = cfg.adaptive ? (cfg.output_every <= 0.0 || state.t >= next_output * (1.0 - 1e-12))
                            : (state.step % static_cast<std::size_t>(cfg.output_stride) == 0);
    if (!remaining()) out = true;
    if (linf > cfg.monitor.linf_factor * linf0) {
      snapshot(state);
      trip("linf threshold", linf, cfg.monitor.linf_factor * linf0);
      break;
    }
    if (tail > cfg.monitor.tail_fraction) {
      snapshot(state);
      trip("spectral tail", tail, cfg.monitor.tail_fraction);
      break;
    }
    if (out) {
      snapshot(state);
      while (cfg.output_every > 0.0 && next_output <= state.t) next_output += cfg.output_every;
    }
  }

  if (res.blowup.tripped) res.blowup.last = res.record.rows.back();
  res.final_state = std::move(state);
  return res;
}

EnvelopeFit fit_envelope(const DiagnosticsRecord& rec, double s0) {
  std::vector<double> x, y;
  for (const auto& r : rec.rows)
    if (r.t >= s0 && r.l2_nonzero > 0.0) {
      x.push_back(r.t - s0);
      y.push_back(2.0 * std::log(r.l2_nonzero));
    }
  if (x.size() < 2) throw DataError("fit_envelope: fewer than two snapshots after s0");
  const auto line = fit_line(x, y);
  double excess = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) excess = std::max(excess, y[i] - (line.slope * x[i] + line.intercept));
  EnvelopeFit f;
  f.rate = -line.slope;
  f.prefactor = std::exp(line.intercept + excess);
  f.s0 = s0;
  f.samples = x.size();
  return f;
}

}  // namespace fracshear
