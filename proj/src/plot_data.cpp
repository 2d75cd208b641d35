#include "fracshear/plot_data.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include <json.hpp>

#include "fracshear/errors.hpp"

namespace fracshear {

PlotData decay_plot(const DiagnosticsRecord& rec, const EnvelopeFit* envelope) {
  PlotData p{"decay", "decay", "t", "log ||n_nonzero||", false, false, {}, {}};
  for (const auto& r : rec.rows)
    if (r.l2_nonzero > 0.0) p.rows.push_back({"log_norm", r.t, std::log(r.l2_nonzero)});
  if (envelope) {
    // envelope is for the squared norm: log‖n≠‖ ≤ ½(log Ĉ − λ̂(t − s₀))
    for (const auto& r : rec.rows)
      if (r.t >= envelope->s0)
        p.rows.push_back({"envelope", r.t, 0.5 * (std::log(envelope->prefactor) - envelope->rate * (r.t - envelope->s0))});
    p.params["rate"] = envelope->rate;
    p.params["prefactor"] = envelope->prefactor;
    p.params["s0"] = envelope->s0;
  }
  return p;
}

PlotData scaling_plot(const std::string& name, const std::string& xlabel, const std::string& ylabel,
                      const std::vector<double>& x, const std::vector<double>& y, double reference_slope) {
  if (x.size() != y.size()) throw ShapeError("scaling_plot: x and y differ in length");
  PlotData p{name, "scaling", xlabel, ylabel, true, true, {}, {}};
  for (std::size_t i = 0; i < x.size(); ++i) p.rows.push_back({"measured", x[i], y[i]});
  if (!x.empty())
    for (double xi : x) p.rows.push_back({"reference", xi, y.front() * std::pow(xi / x.front(), reference_slope)});
  p.params["reference_slope"] = reference_slope;
  return p;
}

PlotData mode_energy_plot(const DiagnosticsRecord& rec) {
  PlotData p{"mode_energy", "mode-energy", "t", "energy", false, true, {}, {}};
  for (const auto& r : rec.rows) {
    p.rows.push_back({"zero_mode", r.t, r.l2_zero * r.l2_zero});
    p.rows.push_back({"nonzero_modes", r.t, r.l2_nonzero * r.l2_nonzero});
  }
  return p;
}

void emit_plot_data(const PlotData& data, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const auto csv = dir / (data.name + ".csv");
  {
    std::ofstream out(csv);
    if (!out) throw DataError("cannot write " + csv.string());
    out << "series,x,y\n" << std::setprecision(17);
    for (const auto& r : data.rows) out << r.series << ',' << r.x << ',' << r.y << '\n';
  }
  {
    std::ofstream gp(dir / (data.name + ".gp"));
    gp << "# " << data.kind << " figure; run with: gnuplot -p " << data.name << ".gp\n"
       << "set datafile separator ','\n"
       << "set key autotitle columnhead\n"
       << "set xlabel '" << data.xlabel << "'\n"
       << "set ylabel '" << data.ylabel << "'\n";
    if (data.logx) gp << "set logscale x\n";
    if (data.logy) gp << "set logscale y\n";
    std::set<std::string> seen;
    std::vector<std::string> series;
    for (const auto& r : data.rows)
      if (seen.insert(r.series).second) series.push_back(r.series);
    if (series.empty()) {
      gp << "# no data\n";
    } else {
      gp << "plot ";
      for (std::size_t i = 0; i < series.size(); ++i)
        gp << (i ? ", \\\n     " : "") << "'" << data.name << ".csv' using 2:(stringcolumn(1) eq '" << series[i]
           << "' ? $3 : NaN) with linespoints title '" << series[i] << "'";
      gp << "\n";
    }
  }
  if (!data.params.empty()) {
    nlohmann::json j(data.params);
    std::ofstream(dir / (data.name + ".params.json")) << j.dump(2) << '\n';
  }
}

DiagnosticsRecord read_diagnostics_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  std::string header;
  std::getline(in, header);
  std::vector<std::string> cols;
  {
    std::stringstream ss(header);
    std::string c;
    while (std::getline(ss, c, ',')) cols.push_back(c);
  }
  if (cols != DiagnosticsRecord::columns()) throw DataError(path.string() + " is not a diagnostics CSV");
  DiagnosticsRecord rec;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> v;
    std::stringstream ss(line);
    std::string c;
    while (std::getline(ss, c, ',')) v.push_back(std::stod(c));
    if (v.size() != cols.size()) throw DataError(path.string() + ": row has the wrong number of columns");
    DiagnosticsRow r;
    std::size_t i = 0;
    r.t = v[i++];
    r.step = static_cast<std::size_t>(v[i++]);
    r.dt = v[i++];
    r.mass = v[i++];
    r.l1 = v[i++];
    r.l2 = v[i++];
    r.linf = v[i++];
    r.l2_nonzero = v[i++];
    r.hs = v[i++];
    r.hs_nonzero = v[i++];
    r.l2_zero = v[i++];
    r.zero_hdot = v[i++];
    r.h1 = v[i++];
    r.energy_residual = v[i++];
    r.min_n = v[i++];
    r.tail_fraction = v[i++];
    r.max_principle = v[i++];
    rec.rows.push_back(r);
  }
  return rec;
}

}  // namespace fracshear
