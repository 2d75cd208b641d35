#pragma once

// Tidy CSV files and gnuplot script stubs for the standard figures.

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "fracshear/nonlinear_solver.hpp"

namespace fracshear {

/// One figure's data in long format: every row is (series, x, y).
struct PlotData {
  std::string name;     // file stem
  std::string kind;     // decay | scaling | mode-energy
  std::string xlabel;
  std::string ylabel;
  bool logx = false;
  bool logy = false;
  struct Row {
    std::string series;
    double x;
    double y;
  };
  std::vector<Row> rows;
  std::map<std::string, double> params;  // fitted lines, reference slopes
};

/// Decay curve (t, log ‖n≠‖) with the fitted envelope when one is given.
PlotData decay_plot(const DiagnosticsRecord& rec, const EnvelopeFit* envelope = nullptr);

/// Scaling data (x, y) with a reference line of the given slope through the first point.
PlotData scaling_plot(const std::string& name, const std::string& xlabel, const std::string& ylabel,
                      const std::vector<double>& x, const std::vector<double>& y, double reference_slope);

/// Zero-mode and nonzero-mode energies over time.
PlotData mode_energy_plot(const DiagnosticsRecord& rec);

/// Writes <dir>/<name>.csv (header series,x,y), <name>.gp and, when params exist, <name>.params.json.
void emit_plot_data(const PlotData& data, const std::filesystem::path& dir);

/// Reads a diagnostics CSV written by DiagnosticsRecord::write_csv.
DiagnosticsRecord read_diagnostics_csv(const std::filesystem::path& path);

}  // namespace fracshear
