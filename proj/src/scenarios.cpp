#include "fracshear/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include <json.hpp>

#include "fracshear/errors.hpp"
#include "fracshear/fft.hpp"
#include "fracshear/field_io.hpp"
#include "fracshear/initial_data.hpp"
#include "fracshear/kernels.hpp"
#include "fracshear/linear_dynamics.hpp"
#include "fracshear/plot_data.hpp"
#include "fracshear/pseudospectrum.hpp"
#include "fracshear/spectral_ops.hpp"
#include "fracshear/stats.hpp"
#include "fracshear/sweep.hpp"

namespace fracshear {

using nlohmann::json;

bool ScenarioResult::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

RateLaw rate_law(const ShearProfile& u, double alpha) {
  if (u.is_constant()) return RateLaw{1.0, alpha, 0};
  const int m = u.flatness() ? u.flatness()->m : detect_flatness_order(u).m;
  return RateLaw{m / (m + alpha), alpha / (m + alpha), m};
}

void write_provenance(const RunConfig& cfg, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "config.echo.ini") << echo_config(cfg);
  json p;
  p["version"] = FRACSHEAR_VERSION;
  p["scenario"] = cfg.scenario;
  p["seed"] = cfg.seed;
  p["workers"] = cfg.workers;
  std::ofstream(dir / "provenance.json") << p.dump(2) << '\n';
}

namespace {

class Csv {
 public:
  Csv(const std::filesystem::path& path, const std::vector<std::string>& header) : out_(path) {
    if (!out_) throw DataError("cannot write " + path.string());
    out_ << std::setprecision(17);
    for (std::size_t i = 0; i < header.size(); ++i) out_ << (i ? "," : "") << header[i];
    out_ << '\n';
  }
  template <class... Ts>
  void row(const Ts&... v) {
    std::size_t i = 0;
    ((out_ << (i++ ? "," : "") << v), ...);
    out_ << '\n';
  }

 private:
  std::ofstream out_;
};

CheckResult check(const std::string& name, bool ok, const std::string& detail) { return {name, ok, detail}; }

std::string num(double v) {
  std::ostringstream s;
  s << std::setprecision(6) << v;
  return s.str();
}

template <class T>
void collect_errors(const std::vector<PointResult<T>>& pts, ScenarioResult& res, const std::string& label) {
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (!pts[i].ok()) res.point_errors.push_back(label + " point " + std::to_string(i) + ": " + pts[i].error);
}

CheckResult exponent_check(const std::string& name, double got, double target, double tol) {
  return check(name, std::abs(got - target) <= tol,
               "exponent " + num(got) + ", target " + num(target) + " ± " + num(tol));
}

// ---- linear-decay-sweep -------------------------------------------------------

ScenarioResult linear_decay_sweep(const RunConfig& cfg, const std::filesystem::path& dir) {
  ScenarioResult res;
  const auto& sw = cfg.sweep;
  const auto& u = cfg.sim.shear;
  const int k = sw.k.front();
  struct Point {
    double alpha, nu;
  };
  std::vector<Point> pts;
  for (double a : sw.alpha)
    for (double n : sw.nu) pts.push_back({a, n});
  const auto out = parallel_map<DecayMeasurement>(pts.size(), cfg.workers, [&](std::size_t i) {
    DecayOptions o;
    o.samples = sw.samples;
    return measure_decay(build_mode_operator(u, k, pts[i].nu, pts[i].alpha, sw.L), o);
  });
  collect_errors(out, res, "decay");

  Csv semi(dir / "semigroup.csv", {"k", "nu", "alpha", "t", "norm"});
  Csv fits(dir / "fits.csv", {"nu", "alpha", "lambda_hat", "C_hat", "residual"});
  json summary;
  summary["k"] = k;
  for (double a : sw.alpha) {
    std::vector<double> nus, rates;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (pts[i].alpha != a || !out[i].ok()) continue;
      const auto& m = *out[i].value;
      for (std::size_t j = 0; j < m.t.size(); ++j) semi.row(k, pts[i].nu, a, m.t[j], m.norm[j]);
      fits.row(pts[i].nu, a, m.fit.rate, m.fit.prefactor, m.fit.residual);
      nus.push_back(pts[i].nu);
      rates.push_back(m.fit.rate);
    }
    const double target = cfg.accept.target.value_or(rate_law(u, a).nu_exponent);
    json entry;
    entry["alpha"] = a;
    entry["target"] = target;
    if (nus.size() >= 2) {
      const auto line = fit_loglog(nus, rates);
      entry["exponent"] = line.slope;
      entry["prefactor"] = std::exp(line.intercept);
      res.checks.push_back(exponent_check("decay exponent alpha=" + num(a), line.slope, target, cfg.accept.tolerance));
      emit_plot_data(scaling_plot("decay_scaling_alpha" + num(a), "nu", "lambda_hat", nus, rates, target), dir);
    }
    summary["fits"].push_back(entry);
  }
  res.summary_json = summary.dump(2);
  return res;
}

// ---- psi-sweep --------------------------------------------------------------------

void write_psi_row(Csv& csv, const std::string& uname, const PsiResult& r) {
  csv.row(uname, r.k, r.nu, r.alpha, r.L, r.lambda_star, r.psi, r.converged ? 1 : 0);
}

ScenarioResult psi_sweep(const RunConfig& cfg, const std::filesystem::path& dir) {
  ScenarioResult res;
  const auto& sw = cfg.sweep;
  const auto& u = cfg.sim.shear;
  struct Point {
    double alpha, nu;
    int k;
  };
  std::vector<Point> pts;
  json excluded = json::array();
  for (double a : sw.alpha)
    for (double n : sw.nu)
      for (int k : sw.k) {
        if (n / std::abs(static_cast<double>(k)) >= 1.0) {
          excluded.push_back({{"alpha", a}, {"nu", n}, {"k", k}, {"reason", "nu/|k| >= 1"}});
          continue;
        }
        pts.push_back({a, n, k});
      }
  const auto out = parallel_map<PsiResult>(pts.size(), cfg.workers, [&](std::size_t i) {
    return psi_bound(u, pts[i].k, pts[i].nu, pts[i].alpha, sw.L);
  });
  collect_errors(out, res, "psi");

  Csv csv(dir / "psi.csv", {"u_name", "k", "nu", "alpha", "L", "lambda_star", "psi", "converged"});
  for (const auto& p : out)
    if (p.ok()) write_psi_row(csv, u.name(), *p.value);

  json summary;
  summary["excluded"] = excluded;
  for (double a : sw.alpha) {
    const auto law = rate_law(u, a);
    json entry;
    entry["alpha"] = a;
    // ν-scaling at the first k, k-scaling at the first ν
    std::vector<PsiResult> by_nu, by_k;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (pts[i].alpha != a || !out[i].ok()) continue;
      if (pts[i].k == sw.k.front()) by_nu.push_back(*out[i].value);
      if (pts[i].nu == sw.nu.front()) by_k.push_back(*out[i].value);
    }
    int unconverged = 0;
    for (std::size_t i = 0; i < pts.size(); ++i)
      if (pts[i].alpha == a && out[i].ok() && !out[i].value->converged) ++unconverged;
    entry["unconverged"] = unconverged;
    if (by_nu.size() >= 4) {
      const auto s = psi_scaling_fit(by_nu);
      const double target = cfg.accept.target.value_or(law.nu_exponent);
      entry["exponent_nu"] = *s.exponent_nu;
      entry["target_nu"] = target;
      entry["prefactor_nu"] = s.prefactor;
      res.checks.push_back(exponent_check("psi nu-exponent alpha=" + num(a), *s.exponent_nu, target, cfg.accept.tolerance));
      std::vector<double> x, y;
      for (const auto& r : by_nu) {
        x.push_back(r.nu);
        y.push_back(r.psi);
      }
      emit_plot_data(scaling_plot("psi_nu_alpha" + num(a), "nu", "psi", x, y, law.nu_exponent), dir);
    }
    if (by_k.size() >= 4) {
      const auto s = psi_scaling_fit(by_k);
      entry["exponent_k"] = *s.exponent_k;
      entry["target_k"] = law.k_exponent;
      entry["prefactor_k"] = s.prefactor;
      res.checks.push_back(exponent_check("psi k-exponent alpha=" + num(a), *s.exponent_k, law.k_exponent, cfg.accept.tolerance));
      std::vector<double> x, y;
      for (const auto& r : by_k) {
        x.push_back(std::abs(r.k));
        y.push_back(r.psi);
      }
      emit_plot_data(scaling_plot("psi_k_alpha" + num(a), "k", "psi", x, y, law.k_exponent), dir);
    }
    summary["fits"].push_back(entry);
  }
  res.summary_json = summary.dump(2);
  return res;
}

// ---- gearhart-pruss -----------------------------------------------------------------

ScenarioResult gearhart_pruss(const RunConfig& cfg, const std::filesystem::path& dir) {
  ScenarioResult res;
  const auto& sw = cfg.sweep;
  const auto& u = cfg.sim.shear;
  struct Point {
    double alpha, nu;
    int k;
  };
  std::vector<Point> pts;
  for (double a : sw.alpha)
    for (double n : sw.nu)
      for (int k : sw.k) pts.push_back({a, n, k});
  const auto out = parallel_map<GearhartPrussReport>(pts.size(), cfg.workers, [&](std::size_t i) {
    const auto& p = pts[i];
    const double psi = psi_bound(u, p.k, p.nu, p.alpha, sw.L).psi;
    const auto times = logspace(0.1, 20.0 / psi, sw.times);
    return gearhart_pruss_check(u, p.k, p.nu, p.alpha, sw.L, times, psi);
  });
  collect_errors(out, res, "gearhart-pruss");
  Csv csv(dir / "gearhart_pruss.csv", {"k", "nu", "alpha", "psi", "t", "norm", "bound"});
  json summary = json::array();
  int violations = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (!out[i].ok()) continue;
    const auto& r = *out[i].value;
    for (const auto& e : r.entries) csv.row(pts[i].k, pts[i].nu, pts[i].alpha, r.psi, e.t, e.norm, e.bound);
    summary.push_back({{"k", pts[i].k}, {"nu", pts[i].nu}, {"alpha", pts[i].alpha}, {"psi", r.psi},
                       {"max_ratio", r.max_ratio}, {"violations", r.violations}});
    violations += r.violations;
  }
  res.checks.push_back(check("gearhart-pruss inequality", violations == 0 && res.point_errors.empty(),
                             std::to_string(violations) + " violations"));
  res.summary_json = summary.dump(2);
  return res;
}

// ---- simulations ----------------------------------------------------------------------

struct RunArtifacts {
  SimResult result;
  double min_max_principle = 0.0;
};

RunArtifacts simulate_and_write(const SimConfig& sim, const SpectralField2D& n0, const std::filesystem::path& dir) {
  double min_mp = std::numeric_limits<double>::infinity();
  auto r = run_simulation(sim, n0, [&](const SimState&, const DiagnosticsRow& row) { min_mp = std::min(min_mp, row.max_principle); });
  r.record.write_csv((dir / "diagnostics.csv").string());
  std::ofstream(dir / "blowup.json") << r.blowup.to_json() << '\n';
  write_field(dir / "final.bin", r.final_state.n, r.final_state.t);
  emit_plot_data(mode_energy_plot(r.record), dir);
  return {std::move(r), min_mp};
}

ScenarioResult suppression_demo(const RunConfig& cfg, const std::filesystem::path& dir) {
  ScenarioResult res;
  SimConfig sim = cfg.sim;
  const double nu = sim.effective_nu();
  const auto lin = measure_decay(build_mode_operator(sim.shear, 1, nu, sim.alpha, cfg.sweep.L));
  if (sim.horizon_after_s0 <= 0.0) sim.horizon_after_s0 = 10.0 / lin.fit.rate;
  const auto n0 = make_initial_data(cfg.initial, sim.grid(), cfg.seed);
  auto art = simulate_and_write(sim, n0, dir);
  const auto& r = art.result;

  json summary;
  summary["status"] = r.blowup.tripped ? "tripped" : "completed";
  summary["lambda_linear"] = lin.fit.rate;
  summary["epsilon0_hat"] = lin.fit.rate / std::pow(nu, rate_law(sim.shear, sim.alpha).nu_exponent);
  summary["s0"] = r.s0;
  summary["t0"] = r.t0 ? json(*r.t0) : json(nullptr);
  summary["t_final"] = r.final_state.t;
  summary["mass_drift"] = r.mass_drift;
  summary["negativity_flag"] = r.negativity_flag;
  summary["min_max_principle"] = art.min_max_principle;
  res.checks.push_back(check("completed without trip", !r.blowup.tripped, r.blowup.tripped ? r.blowup.reason : "completed"));
  if (!r.blowup.tripped) {
    const auto env = fit_envelope(r.record, r.s0);
    summary["envelope_rate"] = env.rate;
    summary["envelope_prefactor"] = env.prefactor;
    emit_plot_data(decay_plot(r.record, &env), dir);
    res.checks.push_back(check("envelope rate >= 0.5 linear rate", env.rate >= 0.5 * lin.fit.rate,
                               "envelope " + num(env.rate) + " vs linear " + num(lin.fit.rate)));
  }
  res.checks.push_back(check("mass conservation", r.mass_drift <= 1e-10, "drift " + num(r.mass_drift)));
  res.checks.push_back(check("max principle", art.min_max_principle >= -1e-8, "min " + num(art.min_max_principle)));
  res.summary_json = summary.dump(2);
  return res;
}

ScenarioResult blowup_demo(const RunConfig& cfg, const std::filesystem::path& dir) {
  ScenarioResult res;
  const auto n0 = make_initial_data(cfg.initial, cfg.sim.grid(), cfg.seed);
  auto art = simulate_and_write(cfg.sim, n0, dir);
  const auto& r = art.result;
  json summary;
  summary["status"] = r.blowup.tripped ? "tripped" : "completed";
  summary["reason"] = r.blowup.reason;
  summary["trip_time"] = r.blowup.time;
  summary["t_end"] = cfg.sim.t_end;
  res.checks.push_back(check("monitor trips before t_end", r.blowup.tripped && r.blowup.time < cfg.sim.t_end,
                             r.blowup.tripped ? r.blowup.reason + " at t=" + num(r.blowup.time) : "no trip"));
  res.summary_json = summary.dump(2);
  return res;
}

// ---- check suites -----------------------------------------------------------------------

/// e^{ix}·e^{−4(1−cos y)} on a grid wide enough in y for truncation L.
SpectralField2D duhamel_datum(int L) {
  std::size_t ny = 8;
  while (static_cast<int>(ny / 2) - 1 < L) ny *= 2;
  const TorusGrid g(8, ny);
  std::vector<cplx> samples(g.size());
  for (std::size_t i = 0; i < g.nx(); ++i)
    for (std::size_t j = 0; j < g.ny(); ++j)
      samples[i * g.ny() + j] = std::polar(std::exp(-4.0 * (1.0 - std::cos(g.y(j)))), g.x(i));
  auto f = to_spectral_complex(g, samples);
  for (std::size_t j = 0; j < g.ny(); ++j) f(0, j) = cplx{};
  return f;
}

ScenarioResult duhamel_check(const RunConfig& cfg, const std::filesystem::path& dir) {
  ScenarioResult res;
  const auto& sw = cfg.sweep;
  const auto f0 = duhamel_datum(sw.L);
  const double nu = cfg.sim.effective_nu();
  Csv csv(dir / "duhamel.csv", {"q", "residual"});
  json summary = json::array();
  std::vector<double> r;
  for (int q : sw.q) {
    r.push_back(duhamel_identity_check(f0, cfg.sim.shear, nu, cfg.sim.alpha, sw.t, q, sw.L));
    csv.row(q, r.back());
    summary.push_back({{"q", q}, {"residual", r.back()}});
  }
  bool mono = true;
  for (std::size_t i = 1; i < r.size(); ++i) mono = mono && (r[i] <= r[i - 1] || std::max(r[i], r[i - 1]) <= 1e-12);
  const auto it = std::find(sw.q.begin(), sw.q.end(), 32);
  const double r32 = it != sw.q.end() ? r[static_cast<std::size_t>(it - sw.q.begin())] : r.back();
  res.checks.push_back(check("residual at 32 nodes", r32 <= cfg.accept.residual_max, "residual " + num(r32)));
  res.checks.push_back(check("residual non-increasing in q", mono, ""));
  res.summary_json = summary.dump(2);
  return res;
}

struct EnergyAudit {
  double max_residual = 0.0;
  double mass_drift = 0.0;
  double split_defect = 0.0;
};

EnergyAudit audit_run(SimConfig sim, const SpectralField2D& n0, double dt) {
  sim.dt = dt;
  sim.adaptive = false;
  sim.output_stride = 1;
  EnergyAudit a;
  const auto r = run_simulation(sim, n0, [&](const SimState& s, const DiagnosticsRow& row) {
    const double lhs = row.l2 * row.l2;
    const double rhs = row.l2_zero * row.l2_zero + row.l2_nonzero * row.l2_nonzero;
    a.split_defect = std::max(a.split_defect, std::abs(lhs - rhs) / std::max(lhs, 1e-300));
    (void)s;
  });
  for (const auto& row : r.record.rows)
    if (std::isfinite(row.energy_residual)) a.max_residual = std::max(a.max_residual, row.energy_residual);
  a.mass_drift = r.mass_drift;
  return a;
}

ScenarioResult energy_audit(const RunConfig& cfg, const std::filesystem::path& dir) {
  ScenarioResult res;
  const auto n0 = make_initial_data(cfg.initial, cfg.sim.grid(), cfg.seed);
  const auto& dts = cfg.sweep.dt;
  const auto out = parallel_map<EnergyAudit>(dts.size(), cfg.workers, [&](std::size_t i) { return audit_run(cfg.sim, n0, dts[i]); });
  collect_errors(out, res, "energy");
  Csv csv(dir / "energy_audit.csv", {"dt", "max_residual", "mass_drift", "split_defect"});
  json summary = json::array();
  for (std::size_t i = 0; i < dts.size(); ++i)
    if (out[i].ok()) {
      const auto& a = *out[i].value;
      csv.row(dts[i], a.max_residual, a.mass_drift, a.split_defect);
      summary.push_back({{"dt", dts[i]}, {"max_residual", a.max_residual}});
    }
  if (out.size() >= 2 && out[0].ok() && out[1].ok()) {
    const double r0 = out[0].value->max_residual, r1 = out[1].value->max_residual;
    const double order = std::log(r0 / r1) / std::log(dts[0] / dts[1]);
    res.checks.push_back(check("energy residual", r0 <= 1e-4, "residual " + num(r0) + " at dt " + num(dts[0])));
    res.checks.push_back(check("energy residual order", order >= cfg.accept.order_min, "order " + num(order)));
  } else {
    res.checks.push_back(check("energy audit runs", false, "need two successful step sizes"));
  }
  res.summary_json = summary.dump(2);
  return res;
}

double max_rel(const SpectralField2D& a, const SpectralField2D& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
    num = std::max(num, std::abs(a.coeffs()[i] - b.coeffs()[i]));
    den = std::max(den, std::abs(b.coeffs()[i]));
  }
  return den > 0.0 ? num / den : num;
}

ScenarioResult kernel_props(const RunConfig& cfg, const std::filesystem::path& dir) {
  ScenarioResult res;
  const TorusGrid g(cfg.sim.nx, cfg.sim.ny);
  const int band = std::max(1, std::min(cfg.initial.band, g.kx_cut()));
  const int count = std::max(1, cfg.sweep.samples);
  Csv csv(dir / "kernel_props.csv", {"sample", "homog_b1", "homog_b2", "div_identity", "ratio_b1_l2", "ratio_b2_linf_l4",
                                     "max_principle"});
  double worst_h1 = 0.0, worst_h2 = 0.0, worst_div = 0.0, worst_mp = 0.0;
  std::vector<double> r1, r2;
  for (int s = 0; s < count; ++s) {
    const auto f = random_field(g, band, cfg.seed + static_cast<std::uint64_t>(s));
    const auto n = f + single_mode(g, 1.0, 0.0, 0, 0);
    const double c = 1.0 + 0.37 * (s % 7);
    const auto n0 = project_zero(n);
    const auto nn = project_nonzero(n);
    const auto b1 = kernel_b1(n0);
    const auto b1c = kernel_b1(c * n0);
    const double h1 = l2_norm_1d(b1c - c * b1) / std::max(l2_norm_1d(c * b1), 1e-300);
    const auto [bx, by] = kernel_b2(nn);
    const auto [bxc, byc] = kernel_b2(c * nn);
    const double h2 = std::max(max_rel(bxc, c * bx), max_rel(byc, c * by));
    const auto kf = attractive_kernel(n);
    auto d = div(kf.bx, kf.by);
    auto fluct = n;
    fluct(0, 0) = cplx{};
    d += fluct;
    double dmax = 0.0, fmax = 0.0;
    for (std::size_t i = 0; i < d.coeffs().size(); ++i) {
      dmax = std::max(dmax, std::abs(d.coeffs()[i]));
      fmax = std::max(fmax, std::abs(fluct.coeffs()[i]));
    }
    const double dv = dmax / fmax;
    // ‖∂yB₁(n⁰)‖₂/‖n⁰ − n̄‖₂ and ‖B₂(n≠)‖∞/‖n≠‖_{L⁴}
    auto n0m = n0;
    n0m.at(0) = cplx{};
    const double ra = l2_norm_1d(ddy_1d(b1)) / l2_norm_1d(n0m);
    const auto pn = to_physical(nn);
    double l4 = 0.0;
    for (double v : pn.values) l4 += v * v * v * v;
    l4 = std::pow(l4 * 4.0 * kPi * kPi / static_cast<double>(g.size()), 0.25);
    const double rb = std::max(norms(bx).linf, norms(by).linf) / l4;
    const double mp = max_principle_check(n, cfg.sim.alpha).lambda_at_max;
    csv.row(s, h1, h2, dv, ra, rb, mp);
    worst_h1 = std::max(worst_h1, h1);
    worst_h2 = std::max(worst_h2, h2);
    worst_div = std::max(worst_div, dv);
    worst_mp = std::min(worst_mp, mp);
    r1.push_back(ra);
    r2.push_back(rb);
  }
  const auto s1 = summarize(r1), s2 = summarize(r2);
  json summary;
  summary["samples"] = count;
  summary["homogeneity_b1"] = worst_h1;
  summary["homogeneity_b2"] = worst_h2;
  summary["div_identity"] = worst_div;
  summary["min_max_principle"] = worst_mp;
  summary["ratio_b1"] = {{"mean", s1.mean}, {"cv", s1.cv}, {"max", s1.max}};
  summary["ratio_b2"] = {{"mean", s2.mean}, {"cv", s2.cv}, {"max", s2.max}};
  res.checks.push_back(check("B1 homogeneity", worst_h1 <= 1e-12, num(worst_h1)));
  res.checks.push_back(check("B2 homogeneity", worst_h2 <= 1e-12, num(worst_h2)));
  res.checks.push_back(check("div B = -(n - mean)", worst_div <= 1e-12, num(worst_div)));
  res.checks.push_back(check("max principle", worst_mp >= -1e-8, num(worst_mp)));
  res.checks.push_back(check("bound ratios finite", std::isfinite(s1.max) && std::isfinite(s2.max),
                             "cv " + num(s1.cv) + ", " + num(s2.cv)));
  res.summary_json = summary.dump(2);
  return res;
}

}  // namespace

ScenarioResult run_scenario(const RunConfig& cfg, const std::filesystem::path& out_dir) {
  write_provenance(cfg, out_dir);
  ScenarioResult res;
  const auto& s = cfg.scenario;
  if (s == "linear-decay-sweep")
    res = linear_decay_sweep(cfg, out_dir);
  else if (s == "psi-sweep")
    res = psi_sweep(cfg, out_dir);
  else if (s == "gearhart-pruss")
    res = gearhart_pruss(cfg, out_dir);
  else if (s == "suppression-demo")
    res = suppression_demo(cfg, out_dir);
  else if (s == "blowup-demo")
    res = blowup_demo(cfg, out_dir);
  else if (s == "duhamel-check")
    res = duhamel_check(cfg, out_dir);
  else if (s == "energy-audit")
    res = energy_audit(cfg, out_dir);
  else if (s == "kernel-props")
    res = kernel_props(cfg, out_dir);
  else
    throw ConfigError("unknown scenario '" + s + "'");
  res.scenario = s;

  json summary;
  summary["scenario"] = s;
  summary["version"] = FRACSHEAR_VERSION;
  summary["passed"] = res.passed();
  summary["results"] = json::parse(res.summary_json.empty() ? "null" : res.summary_json);
  for (const auto& c : res.checks) summary["checks"].push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  summary["point_errors"] = res.point_errors;
  std::ofstream(out_dir / "summary.json") << summary.dump(2) << '\n';
  return res;
}

}  // namespace fracshear
