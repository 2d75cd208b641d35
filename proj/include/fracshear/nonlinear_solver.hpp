#pragma once

// Time integration of the rescaled aggregation equation
//   ∂t n + u(y)∂x n + νΛ^α n + ν∇·(n B(n)) = 0
// with a blow-up monitor and the per-snapshot diagnostics.

#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fracshear/shear.hpp"
#include "fracshear/spectral.hpp"

namespace fracshear {

enum class StepperKind { IfRk2, StrangExact };

std::string to_string(StepperKind s);
StepperKind stepper_from_string(const std::string& s);

struct BlowupMonitor {
  double linf_factor = 1e4;     // trip when ‖n‖∞ exceeds this times the initial ‖n‖∞
  double tail_fraction = 0.1;   // trip when the top third of the band holds this share of ‖n − n̄‖²
  double dt_floor = 1e-10;
};

struct SimConfig {
  double alpha = 1.5;
  double nu = 0.0;  // used when positive
  double A = 0.0;   // ν = 1/A when ν is not given
  std::size_t nx = 128;
  std::size_t ny = 128;
  ShearProfile shear = ShearProfile::named("cos");
  bool advection = true;
  bool nonlinearity = true;
  StepperKind stepper = StepperKind::IfRk2;
  double dt = 1e-3;       // fixed step, or the largest step when adaptive
  bool adaptive = false;
  double t_end = 1.0;
  /// When positive the run continues to at least s₀ + this horizon.
  double horizon_after_s0 = 0.0;
  int output_stride = 10;  // steps between snapshots (fixed-dt runs)
  double output_every = 0.0;  // time between snapshots for adaptive runs; 0 → every step
  std::size_t max_steps = 100000000;
  BlowupMonitor monitor;
  bool clip_negative = false;
  double negativity_flag = 1e-3;  // relative to the initial ‖n‖∞

  /// ν from ν or A; throws ParameterError when neither is positive or α ∉ (0,2].
  double effective_nu() const;
  TorusGrid grid() const { return TorusGrid(nx, ny); }
  void validate() const;
};

struct SimState {
  double t = 0.0;
  SpectralField2D n;
  std::size_t step = 0;
  double last_dt = 0.0;
};

struct DiagnosticsRow {
  double t = 0.0;
  std::size_t step = 0;
  double dt = 0.0;
  double mass = 0.0;         // ∫n = 4π² n̂(0,0)
  double l1 = 0.0;
  double l2 = 0.0;
  double linf = 0.0;
  double l2_nonzero = 0.0;   // ‖n≠‖
  double hs = 0.0;           // ‖Λ^{α/2}n‖
  double hs_nonzero = 0.0;   // ‖Λ^{α/2}n≠‖
  double l2_zero = 0.0;      // ‖n⁰‖ (as a field on T²)
  double zero_hdot = 0.0;    // ‖Λ_y^{α−1}n⁰‖
  double h1 = 0.0;
  double energy_residual = std::numeric_limits<double>::quiet_NaN();
  double min_n = 0.0;
  double tail_fraction = 0.0;
  double max_principle = 0.0;  // Λ^α(n − n̄) at the grid argmax of n − n̄
};

struct DiagnosticsRecord {
  std::vector<DiagnosticsRow> rows;
  static const std::vector<std::string>& columns();
  std::vector<double> values(const DiagnosticsRow& r) const;
  void write_csv(const std::string& path) const;
};

struct BlowupReport {
  bool tripped = false;
  std::string reason;  // "dt collapse", "linf threshold", "spectral tail", "non-finite"
  double time = 0.0;
  double value = 0.0;
  double threshold = 0.0;
  std::optional<DiagnosticsRow> last;
  std::string to_json() const;
};

/// Cached operators for one configuration: diffusion factors and per-k
/// band propagators keyed by step size.
class StepContext {
 public:
  explicit StepContext(const SimConfig& cfg);
  const SimConfig& config() const { return cfg_; }
  double nu() const { return nu_; }
  std::span<const double> shear_on_grid() const { return u_grid_; }
  const std::vector<double>& diffusion_factor(double dt);
  const std::vector<Eigen::MatrixXcd>& band_propagators(double dt);
  /// −u∂x n − ν∇·(nB(n)) with the configured terms switched on.
  SpectralField2D explicit_rhs(const SpectralField2D& n) const;
  /// −ν∇·(nB(n)) (zero when the nonlinearity is off).
  SpectralField2D aggregation_rhs(const SpectralField2D& n) const;

 private:
  SimConfig cfg_;
  double nu_;
  TorusGrid grid_;
  std::vector<double> u_grid_;
  std::vector<double> lambda_alpha_;
  std::map<double, std::vector<double>> diffusion_cache_;
  std::map<double, std::vector<Eigen::MatrixXcd>> propagator_cache_;
};

SimState step_ifrk2(const SimState& s, StepContext& ctx, double dt);
SimState step_exact_linear_strang(const SimState& s, StepContext& ctx, double dt);
SimState step_ifrk2(const SimState& s, const SimConfig& cfg);
SimState step_exact_linear_strang(const SimState& s, const SimConfig& cfg);

/// min(dt_cfl, dt_nl, cfg.dt) with dt_cfl = 0.5/(max|u|·k_max),
/// dt_nl = 0.2/(ν‖n‖∞·k_max) and k_max = nx/2 − 1.
double adapt_dt(const SimState& s, const SimConfig& cfg);

/// Residual of ½d/dt‖n‖² + ν‖Λ^{α/2}n‖² + ν⟨∇·(nB), n⟩ = 0 at the middle of
/// three or more uniformly spaced snapshots (central difference), normalized by the largest term.
double energy_identity_residual(std::span<const SimState> window, const SimConfig& cfg);

struct MaxPrincipleReport {
  double max_value = 0.0;      // max (n − n̄) on the grid
  double lambda_at_max = 0.0;  // Λ^α(n − n̄) there
  double ratio = 0.0;          // Λ^αf(x̄)‖f‖₂^α / f(x̄)^{1+α}
  bool degenerate = false;
};
MaxPrincipleReport max_principle_check(const SpectralField2D& n, double alpha);

/// Energy share of the top third of the retained band in ‖n − n̄‖².
double tail_energy_fraction(const SpectralField2D& n);

DiagnosticsRow diagnose(const SimState& s, const SimConfig& cfg);

struct SimResult {
  DiagnosticsRecord record;
  SimState final_state;
  BlowupReport blowup;
  std::optional<double> t0;  // first time with ‖n‖² ≥ 4‖n₀‖²
  double s0 = 0.0;
  bool negativity_flag = false;
  double mass_drift = 0.0;   // max |M(t) − M(0)|/M(0)
};

using SnapshotCallback = std::function<void(const SimState&, const DiagnosticsRow&)>;

/// Integrates to t_end (or s₀ + horizon) or until the monitor trips.
SimResult run_simulation(const SimConfig& cfg, const SpectralField2D& n0, const SnapshotCallback& on_snapshot = {});

struct EnvelopeFit {
  double rate = 0.0;
  double prefactor = 0.0;  // shifted so that every fitted point lies below the envelope
  double s0 = 0.0;
  std::size_t samples = 0;
};

/// Fits ‖n≠(t)‖² ≤ Ĉe^{−λ̂(t−s₀)} on rows with t ≥ s₀.
EnvelopeFit fit_envelope(const DiagnosticsRecord& rec, double s0);

}  // namespace fracshear
