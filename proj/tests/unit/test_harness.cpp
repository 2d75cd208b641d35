#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fracshear/config.hpp"
#include "fracshear/errors.hpp"
#include "fracshear/initial_data.hpp"
#include "fracshear/plot_data.hpp"
#include "fracshear/scenarios.hpp"
#include "fracshear/spectral_ops.hpp"
#include "fracshear/fft.hpp"

using namespace fracshear;
namespace fs = std::filesystem;

namespace {

const char* kMinimal = R"([run]
scenario = suppression-demo
seed = 3

[physics]
alpha = 1.5
nu = 1e-3
shear = cos

[grid]
nx = 128
ny = 128
)";

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("fracshear_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("minimal config parses and round-trips through the echo") {
  const auto c = parse_config_string(kMinimal);
  CHECK(c.scenario == "suppression-demo");
  CHECK(c.seed == 3);
  CHECK(c.sim.alpha == 1.5);
  CHECK(c.sim.effective_nu() == 1e-3);
  CHECK(c.sim.nx == 128);
  CHECK(c.sim.shear.name() == "cos");
  const auto echo = echo_config(c);
  const auto again = parse_config_string(echo, "echo");
  CHECK(echo_config(again) == echo);
  CHECK(again.sim.effective_nu() == c.sim.effective_nu());

  const auto dir = scratch("config_file");
  std::ofstream(dir / "run.ini") << kMinimal;
  CHECK(echo_config(parse_config(dir / "run.ini")) == echo);
  CHECK_THROWS_AS(parse_config(dir / "missing.ini"), ConfigError);
}

TEST_CASE("config errors") {
  std::string bad_alpha = kMinimal;
  bad_alpha.replace(bad_alpha.find("alpha = 1.5"), 11, "alpha = 2.5");
  try {
    parse_config_string(bad_alpha);
    FAIL("expected a ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("(0,2]") != std::string::npos);
  }

  std::string unknown = kMinimal;
  unknown += "bogus = 1\n";
  try {
    parse_config_string(unknown, "cfg");
    FAIL("expected a ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("cfg:13") != std::string::npos);
  }

  CHECK_THROWS_AS(parse_config_string("[physics]\nnu = 0.1\n"), ConfigError);  // no alpha
  CHECK_THROWS_AS(parse_config_string("[physics]\nalpha = 1.5\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_string("[physics]\nalpha = 1.5\nnu = 0\nA = -1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_string("[physics]\nalpha = 1.5\nnu = abc\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_string("[grid]\nnx = 1.5\n[physics]\nalpha = 1.5\nnu = 1\n"), ConfigError);
}

TEST_CASE("A given, nu omitted") {
  const auto c = parse_config_string("[physics]\nalpha = 1.5\nA = 100\n");
  CHECK(c.sim.effective_nu() == doctest::Approx(0.01).epsilon(1e-15));
}

TEST_CASE("initial data") {
  const TorusGrid g(64, 64);
  const auto b = gaussian_bump(g, 60.0, 0.0, M_PI / 2, 0.5);
  CHECK(std::abs(4.0 * M_PI * M_PI * b.mean() - 60.0) <= 1e-8 * 60.0);
  const auto phys = to_physical(b);
  for (double v : phys.values) CHECK(v >= -1e-12);
  const auto r = random_band(g, 30.0, 0.5, 6, 11);
  CHECK(std::abs(4.0 * M_PI * M_PI * r.mean() - 30.0) <= 1e-8 * 30.0);
  CHECK(r.hermitian_defect() < 1e-14);
  CHECK(random_band(g, 30.0, 0.5, 6, 11).coeffs() == r.coeffs());
}

TEST_CASE("plot data") {
  const auto dir = scratch("plot");
  DiagnosticsRecord empty;
  auto p = decay_plot(empty);
  emit_plot_data(p, dir);
  CHECK(slurp(dir / (p.name + ".csv")) == "series,x,y\n");
  CHECK(fs::exists(dir / (p.name + ".gp")));

  DiagnosticsRecord rec;
  for (int i = 0; i < 10; ++i) {
    DiagnosticsRow row;
    row.t = i;
    row.l2_nonzero = std::exp(-0.1 * i);
    rec.rows.push_back(row);
  }
  const auto env = fit_envelope(rec, 0.0);
  const auto d = decay_plot(rec, &env);
  CHECK(d.params.count("rate"));
  CHECK(d.params.at("rate") == doctest::Approx(0.2).epsilon(1e-10));

  const auto s = scaling_plot("nu_sweep", "nu", "lambda_hat", {1e-2, 1e-3}, {0.1, 0.03}, 4.0 / 7.0);
  CHECK(s.params.at("reference_slope") == doctest::Approx(4.0 / 7.0));
  CHECK(s.logx);
  CHECK(s.logy);
}

TEST_CASE("psi-sweep with zero shear has exponent exactly one in nu") {
  auto cfg = parse_config_string(R"([run]
scenario = psi-sweep
[physics]
alpha = 1.5
nu = 1e-3
shear = zero
[sweep]
nu = 1e-2, 1e-3, 1e-4, 1e-5
alpha = 1.5
k = 1
L = 16
)");
  const auto dir = scratch("psi_zero");
  const auto r = run_scenario(cfg, dir);
  const auto summary = nlohmann::json::parse(slurp(dir / "summary.json"));
  const double e = summary["results"]["fits"][0]["exponent_nu"];
  CHECK(e == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(r.passed());
  CHECK(fs::exists(dir / "psi.csv"));
}

TEST_CASE("determinism and provenance") {
  auto cfg = parse_config_string(R"([run]
scenario = kernel-props
seed = 5
[physics]
alpha = 1.5
nu = 1e-2
[grid]
nx = 32
ny = 32
[sweep]
samples = 20
)");
  const auto a = scratch("det_a"), b = scratch("det_b");
  cfg.workers = 1;
  run_scenario(cfg, a);
  cfg.workers = 2;
  run_scenario(cfg, b);
  CHECK(slurp(a / "kernel_props.csv") == slurp(b / "kernel_props.csv"));
  CHECK_FALSE(slurp(a / "kernel_props.csv").empty());

  write_provenance(cfg, a);
  CHECK(fs::exists(a / "config.echo.ini"));
  const auto prov = nlohmann::json::parse(slurp(a / "provenance.json"));
  CHECK(prov.contains("version"));
  CHECK(parse_config(a / "config.echo.ini").seed == 5);
}

TEST_CASE("rate laws") {
  const auto k = rate_law(ShearProfile::named("cos"), 1.5);
  CHECK(k.m == 2);
  CHECK(k.nu_exponent == doctest::Approx(4.0 / 7.0));
  CHECK(k.k_exponent == doctest::Approx(3.0 / 7.0));
  const auto s3 = rate_law(ShearProfile::named("sin3"), 1.0);
  CHECK(s3.m == 3);
  CHECK(s3.nu_exponent == doctest::Approx(0.75));
  const auto z = rate_law(ShearProfile::named("const"), 1.5);
  CHECK(z.nu_exponent == 1.0);
  CHECK(z.k_exponent == 1.5);
}
