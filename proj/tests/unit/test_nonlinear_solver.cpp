#include <doctest.h>

#include <cmath>

#include "fracshear/errors.hpp"
#include "fracshear/fft.hpp"
#include "fracshear/initial_data.hpp"
#include "fracshear/linear_dynamics.hpp"
#include "fracshear/nonlinear_solver.hpp"
#include "fracshear/spectral_ops.hpp"
#include "test_support.hpp"

using namespace fracshear;

namespace {

SimConfig smooth_config(std::size_t n = 32) {
  SimConfig c;
  c.nx = c.ny = n;
  c.nu = 0.1;
  c.alpha = 1.5;
  c.dt = 1e-3;
  c.t_end = 0.2;
  return c;
}

SpectralField2D smooth_data(const TorusGrid& g) { return fstest::random_positive(g, 7, 3); }

SpectralField2D advance(SimState s, StepContext& ctx, double dt, int steps, StepperKind kind) {
  for (int i = 0; i < steps; ++i) s = kind == StepperKind::IfRk2 ? step_ifrk2(s, ctx, dt) : step_exact_linear_strang(s, ctx, dt);
  return s.n;
}

double rel_l2(const SpectralField2D& a, const SpectralField2D& b) { return l2_norm(a - b) / l2_norm(b); }

}  // namespace

TEST_CASE("stepper names") {
  CHECK(stepper_from_string(to_string(StepperKind::IfRk2)) == StepperKind::IfRk2);
  CHECK(stepper_from_string(to_string(StepperKind::StrangExact)) == StepperKind::StrangExact);
  CHECK_THROWS_AS(stepper_from_string("rk4"), ParameterError);
}

TEST_CASE("pure diffusion is exact for both steppers") {
  auto cfg = smooth_config(16);
  cfg.shear = ShearProfile::named("zero");
  cfg.nonlinearity = false;
  const auto g = cfg.grid();
  const auto n0 = single_mode(g, 1.0, 0.3, 2, 3);
  const double factor = std::exp(-cfg.dt * cfg.nu * std::pow(13.0, 0.75));
  StepContext ctx(cfg);
  const SimState s{0.0, n0, 0, 0.0};
  for (auto kind : {StepperKind::IfRk2, StepperKind::StrangExact}) {
    const auto n1 = advance(s, ctx, cfg.dt, 1, kind);
    CHECK(std::abs(n1.at(2, 3) - factor * n0.at(2, 3)) < 1e-15);
    CHECK(std::abs(n1.at(-2, -3) - factor * n0.at(-2, -3)) < 1e-15);
    CHECK(n1(0, 0) == n0(0, 0));
  }
  // both legs coincide when u = 0
  CHECK(fstest::max_abs_diff(advance(s, ctx, cfg.dt, 3, StepperKind::IfRk2), advance(s, ctx, cfg.dt, 3, StepperKind::StrangExact)) < 1e-15);
}

TEST_CASE("constant state is a fixed point") {
  const auto cfg = smooth_config(16);
  const auto n0 = single_mode(cfg.grid(), 2.0, 0.0, 0, 0);
  StepContext ctx(cfg);
  const SimState s{0.0, n0, 0, 0.0};
  for (auto kind : {StepperKind::IfRk2, StepperKind::StrangExact}) CHECK(fstest::max_abs_diff(advance(s, ctx, cfg.dt, 20, kind), n0) < 1e-14);

  auto run = cfg;
  run.t_end = 0.05;
  run.output_stride = 5;
  const auto r = run_simulation(run, n0);
  CHECK_FALSE(r.blowup.tripped);
  CHECK(r.mass_drift <= 1e-12);
  CHECK(r.final_state.t == doctest::Approx(0.05));
  for (const auto& row : r.record.rows) {
    CHECK(row.l2 == doctest::Approx(r.record.rows.front().l2).epsilon(1e-12));
    CHECK(row.l2_nonzero < 1e-12);
    if (!std::isnan(row.energy_residual)) CHECK(row.energy_residual <= 1e-12);
  }
  CHECK_FALSE(r.t0);
  CHECK(r.s0 == 0.0);
}

TEST_CASE("non-finite state is a numerical failure") {
  const auto cfg = smooth_config(16);
  auto n0 = smooth_data(cfg.grid());
  n0.at(1, 1) = cplx{std::nan(""), 0.0};
  StepContext ctx(cfg);
  CHECK_THROWS_AS(step_ifrk2(SimState{0.0, n0, 0, 0.0}, ctx, cfg.dt), NumericalError);
}

TEST_CASE("IF-RK2 self-convergence") {
  const auto cfg = smooth_config(32);
  StepContext ctx(cfg);
  const SimState s{0.0, smooth_data(cfg.grid()), 0, 0.0};
  const double T = 0.2, dt = 0.02;
  const auto a = advance(s, ctx, dt, 10, StepperKind::IfRk2);
  const auto b = advance(s, ctx, dt / 2, 20, StepperKind::IfRk2);
  const auto c = advance(s, ctx, dt / 4, 40, StepperKind::IfRk2);
  const double p = std::log2(l2_norm(a - b) / l2_norm(b - c));
  MESSAGE("observed order " << p << " at T = " << T);
  CHECK(p >= 1.9);
}

TEST_CASE("Strang step without nonlinearity matches the per-mode propagator") {
  auto cfg = smooth_config(32);
  cfg.nonlinearity = false;
  const auto g = cfg.grid();
  const auto n0 = smooth_data(g);
  StepContext ctx(cfg);
  const auto n1 = advance(SimState{0.0, n0, 0, 0.0}, ctx, cfg.dt, 5, StepperKind::StrangExact);
  const int kc = g.kx_cut(), lc = g.ky_cut();
  double err = 0.0;
  for (int k = -kc; k <= kc; ++k) {
    if (k == 0) continue;
    const auto op = build_mode_operator(cfg.shear, k, cfg.nu, cfg.alpha, lc);
    Eigen::VectorXcd v(op.dim());
    for (int l = -lc; l <= lc; ++l) v(l + lc) = n0.at(k, l);
    const auto w = propagate_mode(op, v, 5 * cfg.dt);
    for (int l = -lc; l <= lc; ++l) err = std::max(err, std::abs(w(l + lc) - n1.at(k, l)));
  }
  CHECK(err < 1e-10);
}

TEST_CASE("Strang and IF-RK2 agree on a smooth nonlinear run") {
  const auto cfg = smooth_config(32);
  StepContext ctx(cfg);
  const SimState s{0.0, smooth_data(cfg.grid()), 0, 0.0};
  const auto a = advance(s, ctx, 1e-3, 1000, StepperKind::IfRk2);
  const auto b = advance(s, ctx, 1e-3, 1000, StepperKind::StrangExact);
  MESSAGE("relative difference " << rel_l2(a, b));
  CHECK(rel_l2(a, b) <= 1e-5);
}

TEST_CASE("adapt_dt") {
  SimConfig cfg;
  cfg.nu = 1e-8;
  cfg.dt = 1.0;
  const auto small = single_mode(cfg.grid(), 1.0, 0.1, 1, 0);
  CHECK(adapt_dt(SimState{0.0, small, 0, 0.0}, cfg) == doctest::Approx(0.5 / 63.0).epsilon(1e-14));

  cfg.shear = ShearProfile::named("zero");
  cfg.nu = 0.1;
  const double linf = norms(small).linf;
  CHECK(adapt_dt(SimState{0.0, small, 0, 0.0}, cfg) == doctest::Approx(0.2 / (0.1 * linf * 63.0)).epsilon(1e-12));
  cfg.dt = 1e-4;
  CHECK(adapt_dt(SimState{0.0, small, 0, 0.0}, cfg) == 1e-4);
}

TEST_CASE("energy identity residual") {
  SUBCASE("constant state") {
    const auto cfg = smooth_config(16);
    const auto n0 = single_mode(cfg.grid(), 1.0, 0.0, 0, 0);
    std::vector<SimState> w = {{0.0, n0, 0, 0.0}, {0.1, n0, 1, 0.1}, {0.2, n0, 2, 0.1}};
    CHECK(energy_identity_residual(w, cfg) <= 1e-12);
    w[2].t = 0.25;
    CHECK_THROWS_AS(energy_identity_residual(w, cfg), DataError);
    w.pop_back();
    CHECK_THROWS_AS(energy_identity_residual(w, cfg), DataError);
  }
  SUBCASE("single-mode linear decay: halving dt quarters the residual") {
    auto cfg = smooth_config(16);
    cfg.shear = ShearProfile::named("zero");
    cfg.nonlinearity = false;
    const auto g = cfg.grid();
    const auto n0 = single_mode(g, 0.0, 1.0, 1, 2);
    auto window = [&](double h) {
      std::vector<SimState> w;
      for (int i = 0; i < 3; ++i) {
        auto n = n0;
        n *= std::exp(-cfg.nu * std::pow(5.0, 0.75) * (1.0 + i * h));
        w.push_back({1.0 + i * h, n, static_cast<std::size_t>(i), h});
      }
      return w;
    };
    const double r1 = energy_identity_residual(window(0.1), cfg);
    const double r2 = energy_identity_residual(window(0.05), cfg);
    MESSAGE("ratio " << r1 / r2);
    CHECK(r1 / r2 == doctest::Approx(4.0).epsilon(0.02));
  }
  SUBCASE("smooth nonlinear run") {
    auto cfg = smooth_config(32);
    cfg.t_end = 0.05;
    cfg.output_stride = 1;
    double prev = 0.0;
    for (double dt : {1e-3, 5e-4}) {
      cfg.dt = dt;
      const auto r = run_simulation(cfg, smooth_data(cfg.grid()));
      double worst = 0.0;
      for (const auto& row : r.record.rows)
        if (!std::isnan(row.energy_residual)) worst = std::max(worst, row.energy_residual);
      MESSAGE("dt " << dt << " residual " << worst);
      CHECK(worst <= 1e-4);
      if (prev > 0.0) CHECK(worst < prev);
      prev = worst;
    }
  }
}

TEST_CASE("maximum principle probe") {
  const TorusGrid g(32, 32);
  const auto c = max_principle_check(single_mode(g, 0.0, 1.0, 1, 0), 1.5);  // cos x
  CHECK(c.max_value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(c.lambda_at_max == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_FALSE(c.degenerate);

  const auto d = max_principle_check(single_mode(g, 3.0, 0.0, 0, 0), 1.5);
  CHECK(d.degenerate);
  CHECK(d.max_value == 0.0);
  CHECK(d.lambda_at_max == 0.0);

  for (std::uint64_t s = 0; s < 100; ++s) {
    const double alpha = 0.2 + 1.8 * static_cast<double>(s % 10) / 9.0;
    const auto r = max_principle_check(fstest::random_real(g, 500 + s, 6), alpha);
    CHECK(r.lambda_at_max >= -1e-8);
    CHECK(r.ratio >= 0.0);
  }
}

TEST_CASE("tail fraction") {
  const TorusGrid g(32, 32);
  CHECK(tail_energy_fraction(single_mode(g, 1.0, 0.0, 0, 0)) == 0.0);
  CHECK(tail_energy_fraction(single_mode(g, 1.0, 0.5, 1, 1)) == 0.0);
  CHECK(tail_energy_fraction(single_mode(g, 1.0, 0.5, 10, 0)) == doctest::Approx(1.0));
}

TEST_CASE("run invariants on a smooth run") {
  auto cfg = smooth_config(32);
  cfg.t_end = 0.1;
  cfg.output_stride = 10;
  for (auto kind : {StepperKind::IfRk2, StepperKind::StrangExact}) {
    cfg.stepper = kind;
    const auto n0 = smooth_data(cfg.grid());
    double l2_err = 0.0;
    const auto r = run_simulation(cfg, n0, [&](const SimState& s, const DiagnosticsRow& row) {
      CHECK(s.n(0, 0) == n0(0, 0));  // bit-identical mean mode
      l2_err = std::max(l2_err, std::abs(row.l2 * row.l2 - row.l2_zero * row.l2_zero - row.l2_nonzero * row.l2_nonzero) / (row.l2 * row.l2));
    });
    CHECK(r.mass_drift <= 1e-10);
    CHECK(l2_err <= 1e-12);
    CHECK(r.record.rows.size() == 11);
    CHECK_FALSE(r.blowup.tripped);
    for (const auto& row : r.record.rows)
      for (double v : r.record.values(row)) CHECK((std::isfinite(v) || std::isnan(row.energy_residual)));
  }
}

TEST_CASE("linear regime matches the per-mode propagator") {
  auto cfg = smooth_config(32);
  cfg.nonlinearity = false;
  cfg.stepper = StepperKind::StrangExact;
  cfg.dt = 0.01;
  cfg.t_end = 0.5;
  const auto g = cfg.grid();
  const auto n0 = smooth_data(g);
  const auto r = run_simulation(cfg, n0);
  const int kc = g.kx_cut(), lc = g.ky_cut();
  auto expected = r.final_state.n;
  for (int k = -kc; k <= kc; ++k) {
    if (k == 0) continue;
    const auto op = build_mode_operator(cfg.shear, k, cfg.nu, cfg.alpha, lc);
    Eigen::VectorXcd v(op.dim());
    for (int l = -lc; l <= lc; ++l) v(l + lc) = n0.at(k, l);
    const auto w = propagate_mode(op, v, cfg.t_end);
    for (int l = -lc; l <= lc; ++l) expected.at(k, l) = w(l + lc);
  }
  const auto got = project_nonzero(r.final_state.n);
  CHECK(l2_norm(got - project_nonzero(expected)) <= 1e-8 * l2_norm(got));
}

TEST_CASE("run_simulation preconditions") {
  auto cfg = smooth_config(16);
  auto neg = single_mode(cfg.grid(), 0.1, 1.0, 1, 0);
  CHECK_THROWS_AS(run_simulation(cfg, neg), PreconditionError);
  CHECK_THROWS_AS(run_simulation(cfg, smooth_data(TorusGrid(32, 32))), ShapeError);
  cfg.alpha = 2.5;
  CHECK_THROWS_AS(run_simulation(cfg, smooth_data(cfg.grid())), ParameterError);
}

TEST_CASE("concentrated data without shear trips the monitor") {
  SimConfig cfg;
  cfg.nx = cfg.ny = 64;
  cfg.nu = 0.2;
  cfg.advection = false;
  cfg.adaptive = true;
  cfg.dt = 1e-2;
  cfg.t_end = 5.0;
  cfg.output_every = 0.05;
  const auto n0 = gaussian_bump(cfg.grid(), 60.0, 0.0, M_PI / 2, 0.5);
  const auto r = run_simulation(cfg, n0);
  MESSAGE("reason " << r.blowup.reason << " at t = " << r.blowup.time);
  REQUIRE(r.blowup.tripped);
  CHECK(r.blowup.time < 5.0);
  CHECK(r.blowup.last);
  CHECK(r.blowup.to_json().find(r.blowup.reason) != std::string::npos);
}

TEST_CASE("envelope fit") {
  DiagnosticsRecord rec;
  for (int i = 0; i <= 20; ++i) {
    DiagnosticsRow row;
    row.t = 0.5 * i;
    row.l2_nonzero = std::sqrt(3.0 * std::exp(-0.4 * (row.t - 1.0)));
    rec.rows.push_back(row);
  }
  const auto f = fit_envelope(rec, 1.0);
  CHECK(f.rate == doctest::Approx(0.4).epsilon(1e-10));
  CHECK(f.prefactor == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(f.samples == 19);
}
