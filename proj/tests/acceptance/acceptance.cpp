// Runs the twelve acceptance criteria and prints one PASS/FAIL line each.
//
//   acceptance <configs-dir> [--out DIR] [--only N,M,...]
//
// Scenario-backed criteria read the shipped configs so that every number
// printed here can be reproduced with the CLI.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fracshear/config.hpp"
#include "fracshear/initial_data.hpp"
#include "fracshear/kernels.hpp"
#include "fracshear/nonlinear_solver.hpp"
#include "fracshear/pseudospectrum.hpp"
#include "fracshear/scenarios.hpp"
#include "fracshear/shear.hpp"
#include "fracshear/spectral_ops.hpp"

using namespace fracshear;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

struct Env {
  fs::path configs;
  fs::path out;
};

ScenarioResult scenario(const Env& env, const std::string& config, const std::string& tag) {
  const auto cfg = parse_config(env.configs / config);
  const auto dir = env.out / tag;
  fs::create_directories(dir);
  return run_scenario(cfg, dir);
}

const CheckResult& find_check(const ScenarioResult& r, const std::string& prefix) {
  for (const auto& c : r.checks)
    if (c.name.rfind(prefix, 0) == 0) return c;
  throw std::runtime_error("scenario " + r.scenario + " has no check '" + prefix + "'");
}

Outcome from_checks(const ScenarioResult& r) {
  Outcome o{r.passed(), ""};
  for (const auto& c : r.checks) o.detail += (o.detail.empty() ? "" : "; ") + c.name + ": " + c.detail;
  for (const auto& e : r.point_errors) o.detail += "; point error: " + e;
  return o;
}

// 1. u = 0: Ψ equals ν|k|^α
Outcome diagonal_psi(const Env&) {
  const auto zero = ShearProfile::named("zero");
  double worst = 0.0;
  int count = 0;
  for (double nu : {1e-1, 1e-2, 1e-3})
    for (double alpha : {0.5, 1.5})
      for (int k : {1, 3}) {
        const double expected = nu * std::pow(static_cast<double>(k), alpha);
        const auto r = psi_bound(zero, k, nu, alpha, 8);
        worst = std::max(worst, std::abs(r.psi - expected) / expected);
        ++count;
      }
  return {worst <= 1e-10 && count == 12, std::to_string(count) + " combinations, max relative error " + num(worst)};
}

// 6. flatness orders
Outcome flatness(const Env&) {
  const int a = detect_flatness_order(ShearProfile::named("cos")).m;
  const int b = detect_flatness_order(ShearProfile::named("sin3")).m;
  const int c = detect_flatness_order(ShearProfile::named("cos2")).m;
  return {a == 2 && b == 3 && c == 2, "cos y -> " + std::to_string(a) + ", sin^3 y -> " + std::to_string(b) + ", cos 2y -> " + std::to_string(c)};
}

// 8. mass drift over 10⁴ nonlinear steps, energy split at every snapshot, div B = −(n − n̄)
Outcome conservation(const Env&) {
  SimConfig cfg;  // suppression setup at a fixed step
  cfg.nx = cfg.ny = 128;
  cfg.nu = 1e-3;
  cfg.alpha = 1.5;
  cfg.dt = 1e-3;
  cfg.t_end = 10.0;
  cfg.output_stride = 100;
  const auto n0 = gaussian_bump(cfg.grid(), 60.0, 0.0, M_PI / 2, 0.5);
  double split = 0.0;
  const auto r = run_simulation(cfg, n0, [&](const SimState&, const DiagnosticsRow& row) {
    const double lhs = row.l2 * row.l2;
    split = std::max(split, std::abs(lhs - row.l2_zero * row.l2_zero - row.l2_nonzero * row.l2_nonzero) / lhs);
  });

  const TorusGrid g(64, 64);
  double div_err = 0.0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    auto n = random_field(g, 12, 9000 + s);
    n(0, 0) = 1.0;
    const auto kf = attractive_kernel(n);
    auto d = div(kf.bx, kf.by);
    auto fluct = n;
    fluct(0, 0) = cplx{};
    double dmax = 0.0, fmax = 0.0;
    for (std::size_t i = 0; i < d.coeffs().size(); ++i) {
      dmax = std::max(dmax, std::abs(d.coeffs()[i] + fluct.coeffs()[i]));
      fmax = std::max(fmax, std::abs(fluct.coeffs()[i]));
    }
    div_err = std::max(div_err, dmax / fmax);
  }
  const bool ok = !r.blowup.tripped && r.final_state.step == 10000 && r.mass_drift <= 1e-10 && split <= 1e-12 && div_err <= 1e-12;
  return {ok, std::to_string(r.final_state.step) + " steps, mass drift " + num(r.mass_drift) + ", split defect " + num(split) +
                  ", div identity " + num(div_err) + (r.blowup.tripped ? ", tripped: " + r.blowup.reason : "")};
}

// 10 and 11 share the suppression run
struct SuppressionRun {
  bool done = false;
  ScenarioResult result;
  json summary;
};
SuppressionRun g_suppression;

const SuppressionRun& suppression(const Env& env) {
  if (!g_suppression.done) {
    g_suppression.result = scenario(env, "suppression.ini", "suppression");
    g_suppression.summary = json::parse(g_suppression.result.summary_json);
    g_suppression.done = true;
  }
  return g_suppression;
}

Outcome dichotomy(const Env& env) {
  const auto blow = scenario(env, "blowup.ini", "blowup");
  const auto bsum = json::parse(blow.summary_json);
  const auto& sup = suppression(env);
  const auto& s = sup.summary;
  const bool tripped = bsum["status"] == "tripped" && bsum["trip_time"].get<double>() < 5.0;
  const bool completed = s["status"] == "completed";
  const double lam = s["lambda_linear"];
  const double env_rate = s.contains("envelope_rate") ? s["envelope_rate"].get<double>() : 0.0;
  const double horizon_end = s["s0"].get<double>() + 10.0 / lam;
  const bool reached = s["t_final"].get<double>() >= horizon_end * (1.0 - 1e-12);
  std::string detail = "blowup: " + bsum["status"].get<std::string>();
  if (tripped) detail += " (" + bsum["reason"].get<std::string>() + " at tau=" + num(bsum["trip_time"]) + ")";
  detail += "; suppression: " + s["status"].get<std::string>() + " to tau=" + num(s["t_final"]) + " (s0=" + num(s["s0"]) +
            "), envelope rate " + num(env_rate) + " vs 0.5*eps0*nu^(4/7) = " + num(0.5 * lam) + ", eps0_hat " + num(s["epsilon0_hat"]);
  return {tripped && completed && reached && env_rate >= 0.5 * lam, detail};
}

Outcome max_principle(const Env& env) {
  const TorusGrid g(64, 64);
  double worst = std::numeric_limits<double>::infinity();
  for (std::uint64_t s = 0; s < 100; ++s) {
    const auto r = max_principle_check(random_field(g, 12, 7000 + s), 1.5);
    worst = std::min(worst, r.lambda_at_max);
  }
  const auto& sup = suppression(env);
  const double runs = sup.summary["min_max_principle"];
  return {worst >= -1e-8 && runs >= -1e-8, "random fields min " + num(worst) + ", suppression snapshots min " + num(runs)};
}

Outcome kernel_suite(const Env& env) {
  const auto r = scenario(env, "kernel_props.ini", "kernel_props");
  const auto s = json::parse(r.summary_json);
  const bool ok = find_check(r, "B1 homogeneity").passed && find_check(r, "B2 homogeneity").passed &&
                  find_check(r, "bound ratios finite").passed;
  return {ok, std::to_string(s["samples"].get<int>()) + " fields, homogeneity B1 " + num(s["homogeneity_b1"]) + ", B2 " +
                  num(s["homogeneity_b2"]) + ", ratio cv " + num(s["ratio_b1"]["cv"]) + " / " + num(s["ratio_b2"]["cv"])};
}

struct Criterion {
  int id;
  std::string name;
  std::function<Outcome(const Env&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::string configs, out = "acceptance_out", only;
  app.add_option("configs", configs, "directory with the scenario configs")->required()->check(CLI::ExistingDirectory);
  app.add_option("--out", out, "artifact directory");
  app.add_option("--only", only, "comma-separated criterion numbers");
  CLI11_PARSE(app, argc, argv);

  std::set<int> selected;
  {
    std::stringstream ss(only);
    for (std::string tok; std::getline(ss, tok, ',');)
      if (!tok.empty()) selected.insert(std::stoi(tok));
  }
  const Env env{configs, out};
  fs::create_directories(env.out);

  const std::vector<Criterion> criteria = {
      {1, "diagonal pseudospectral bound", diagonal_psi},
      {2, "psi nu-scaling 4/7 +- 0.06", [](const Env& e) { return from_checks(scenario(e, "psi_nu_sweep.ini", "psi_nu")); }},
      {3, "psi k-scaling 3/7 +- 0.08", [](const Env& e) { return from_checks(scenario(e, "psi_k_sweep.ini", "psi_k")); }},
      {4, "semigroup decay scaling 4/7, 8/15 +- 0.08", [](const Env& e) { return from_checks(scenario(e, "linear_decay.ini", "linear_decay")); }},
      {5, "Gearhart-Pruss consistency", [](const Env& e) { return from_checks(scenario(e, "gearhart_pruss.ini", "gearhart_pruss")); }},
      {6, "flatness detection", flatness},
      {7, "Duhamel/commutator identity", [](const Env& e) { return from_checks(scenario(e, "duhamel.ini", "duhamel")); }},
      {8, "conservation and decomposition", conservation},
      {9, "energy identity", [](const Env& e) { return from_checks(scenario(e, "energy_audit.ini", "energy_audit")); }},
      {10, "suppression dichotomy", dichotomy},
      {11, "max-principle positivity", max_principle},
      {12, "kernel property suite", kernel_suite},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    if (!selected.empty() && !selected.count(c.id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run(env);
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.passed) ++failed;
    std::cout << (o.passed ? "PASS" : "FAIL") << "  [" << c.id << "] " << c.name << " | " << o.detail << " | " << num(secs) << " s"
              << std::endl;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
  return failed == 0 ? 0 : 1;
}
