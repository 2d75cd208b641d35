#pragma once

// Scenario orchestration: each scenario binds a configuration to the
// library operations, writes its CSV/JSON artifacts and evaluates its checks.

#include <filesystem>
#include <string>
#include <vector>

#include "fracshear/config.hpp"

namespace fracshear {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ScenarioResult {
  std::string scenario;
  std::vector<CheckResult> checks;
  std::vector<std::string> point_errors;
  std::string summary_json;
  bool passed() const;
};

/// Rate-law exponents for a shear with flatness order m: ν^{m/(m+α)}, |k|^{α/(m+α)}.
/// A constant shear gives the diffusive law (1, α).
struct RateLaw {
  double nu_exponent = 1.0;
  double k_exponent = 1.0;
  int m = 0;
};
RateLaw rate_law(const ShearProfile& u, double alpha);

/// Writes config.echo.ini and provenance.json into dir.
void write_provenance(const RunConfig& cfg, const std::filesystem::path& dir);

ScenarioResult run_scenario(const RunConfig& cfg, const std::filesystem::path& out_dir);

}  // namespace fracshear
