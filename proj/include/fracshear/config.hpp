#pragma once

// Run configuration: an INI-style file with [section] headers and
// `key = value` lines. Lists are comma separated; `#` and `;` start comments.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "fracshear/nonlinear_solver.hpp"

namespace fracshear {

struct InitialDataSpec {
  std::string kind = "gaussian-bump";  // gaussian-bump | single-mode | random-band | file
  double mass = 60.0;                   // ∫n for the bump and random-band kinds
  double center_x = 0.0;
  double center_y = 1.5707963267948966;
  double width = 0.5;
  double mean = 1.0;       // single-mode background
  double amplitude = 0.1;  // single-mode / random-band fluctuation size
  int mode_k = 1;
  int mode_l = 0;
  int band = 8;
  std::string file;
};

struct SweepSpec {
  std::vector<double> nu;
  std::vector<double> alpha;
  std::vector<int> k = {1};
  int L = 128;
  int k_max = 8;
  int samples = 40;       // decay-fit samples / ensemble size for property suites
  int times = 20;         // Gearhart–Prüss times
  double t = 1.0;         // Duhamel time
  std::vector<int> q = {8, 16, 32, 64};
  std::vector<double> dt = {1e-3, 5e-4};  // energy-audit step sizes
};

struct AcceptanceSpec {
  std::optional<double> target;  // expected exponent; defaults to the rate law of the shear
  double tolerance = 0.08;
  double residual_max = 1e-6;
  double order_min = 1.9;
};

struct RunConfig {
  std::string scenario = "suppression-demo";
  std::uint64_t seed = 1;
  int workers = 1;
  std::string shear_name = "cos";
  SimConfig sim;
  InitialDataSpec initial;
  SweepSpec sweep;
  AcceptanceSpec accept;
};

RunConfig parse_config(const std::filesystem::path& path);
RunConfig parse_config_string(const std::string& text, const std::string& origin = "<string>");

/// Canonical text of every resolved parameter; parses back to the same configuration.
std::string echo_config(const RunConfig& cfg);

/// Known scenario names.
const std::vector<std::string>& scenario_names();

}  // namespace fracshear
