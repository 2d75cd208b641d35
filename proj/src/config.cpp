#include "fracshear/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "fracshear/errors.hpp"

namespace fracshear {

namespace {

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double to_double(const std::string& v) {
  std::size_t pos = 0;
  double d = 0.0;
  try {
    d = std::stod(v, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("expected a number, got '" + v + "'");
  }
  if (pos != v.size()) throw std::invalid_argument("expected a number, got '" + v + "'");
  return d;
}

long long to_int(const std::string& v) {
  long long x = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc{} || p != v.data() + v.size()) throw std::invalid_argument("expected an integer, got '" + v + "'");
  return x;
}

bool to_bool(const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw std::invalid_argument("expected true or false, got '" + v + "'");
}

std::string fmt(double d) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", d);
  return buf;
}

template <class T>
std::string fmt_list(const std::vector<T>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    if constexpr (std::is_floating_point_v<T>)
      s += fmt(v[i]);
    else
      s += std::to_string(v[i]);
  }
  return s;
}

struct Key {
  std::string name;  // section.key
  std::function<void(RunConfig&, const std::string&)> set;
  std::function<std::string(const RunConfig&)> get;
};

#define FS_DOUBLE(name, field) \
  Key{name, [](RunConfig& c, const std::string& v) { c.field = to_double(v); }, [](const RunConfig& c) { return fmt(c.field); }}
#define FS_INT(name, field)                                                                    \
  Key{name, [](RunConfig& c, const std::string& v) { c.field = static_cast<decltype(c.field)>(to_int(v)); }, \
      [](const RunConfig& c) { return std::to_string(c.field); }}
#define FS_BOOL(name, field) \
  Key{name, [](RunConfig& c, const std::string& v) { c.field = to_bool(v); }, [](const RunConfig& c) { return std::string(c.field ? "true" : "false"); }}
#define FS_STRING(name, field) \
  Key{name, [](RunConfig& c, const std::string& v) { c.field = v; }, [](const RunConfig& c) { return c.field; }}
#define FS_DLIST(name, field)                                                              \
  Key{name, [](RunConfig& c, const std::string& v) {                                       \
        c.field.clear();                                                                   \
        for (const auto& x : split_list(v)) c.field.push_back(to_double(x));               \
      },                                                                                   \
      [](const RunConfig& c) { return fmt_list(c.field); }}
#define FS_ILIST(name, field)                                                              \
  Key{name, [](RunConfig& c, const std::string& v) {                                       \
        c.field.clear();                                                                   \
        for (const auto& x : split_list(v)) c.field.push_back(static_cast<int>(to_int(x))); \
      },                                                                                   \
      [](const RunConfig& c) { return fmt_list(c.field); }}

const std::vector<Key>& keys() {
  static const std::vector<Key> k = {
      FS_STRING("run.scenario", scenario),
      FS_INT("run.seed", seed),
      FS_INT("run.workers", workers),
      FS_DOUBLE("physics.alpha", sim.alpha),
      FS_DOUBLE("physics.nu", sim.nu),
      FS_DOUBLE("physics.A", sim.A),
      FS_STRING("physics.shear", shear_name),
      FS_BOOL("physics.advection", sim.advection),
      FS_BOOL("physics.nonlinearity", sim.nonlinearity),
      FS_INT("grid.nx", sim.nx),
      FS_INT("grid.ny", sim.ny),
      Key{"stepper.kind", [](RunConfig& c, const std::string& v) { c.sim.stepper = stepper_from_string(v); },
          [](const RunConfig& c) { return to_string(c.sim.stepper); }},
      FS_DOUBLE("stepper.dt", sim.dt),
      FS_BOOL("stepper.adaptive", sim.adaptive),
      FS_DOUBLE("stepper.t_end", sim.t_end),
      FS_DOUBLE("stepper.horizon_after_s0", sim.horizon_after_s0),
      FS_INT("stepper.output_stride", sim.output_stride),
      FS_DOUBLE("stepper.output_every", sim.output_every),
      FS_INT("stepper.max_steps", sim.max_steps),
      FS_BOOL("stepper.clip_negative", sim.clip_negative),
      FS_DOUBLE("monitor.linf_factor", sim.monitor.linf_factor),
      FS_DOUBLE("monitor.tail_fraction", sim.monitor.tail_fraction),
      FS_DOUBLE("monitor.dt_floor", sim.monitor.dt_floor),
      FS_DOUBLE("monitor.negativity_flag", sim.negativity_flag),
      FS_STRING("initial.kind", initial.kind),
      FS_DOUBLE("initial.mass", initial.mass),
      FS_DOUBLE("initial.center_x", initial.center_x),
      FS_DOUBLE("initial.center_y", initial.center_y),
      FS_DOUBLE("initial.width", initial.width),
      FS_DOUBLE("initial.mean", initial.mean),
      FS_DOUBLE("initial.amplitude", initial.amplitude),
      FS_INT("initial.mode_k", initial.mode_k),
      FS_INT("initial.mode_l", initial.mode_l),
      FS_INT("initial.band", initial.band),
      FS_STRING("initial.file", initial.file),
      FS_DLIST("sweep.nu", sweep.nu),
      FS_DLIST("sweep.alpha", sweep.alpha),
      FS_ILIST("sweep.k", sweep.k),
      FS_INT("sweep.L", sweep.L),
      FS_INT("sweep.k_max", sweep.k_max),
      FS_INT("sweep.samples", sweep.samples),
      FS_INT("sweep.times", sweep.times),
      FS_DOUBLE("sweep.t", sweep.t),
      FS_ILIST("sweep.q", sweep.q),
      FS_DLIST("sweep.dt", sweep.dt),
      Key{"acceptance.target",
          [](RunConfig& c, const std::string& v) {
            if (v == "auto" || v.empty())
              c.accept.target.reset();
            else
              c.accept.target = to_double(v);
          },
          [](const RunConfig& c) { return c.accept.target ? fmt(*c.accept.target) : std::string("auto"); }},
      FS_DOUBLE("acceptance.tolerance", accept.tolerance),
      FS_DOUBLE("acceptance.residual_max", accept.residual_max),
      FS_DOUBLE("acceptance.order_min", accept.order_min),
  };
  return k;
}

#undef FS_DOUBLE
#undef FS_INT
#undef FS_BOOL
#undef FS_STRING
#undef FS_DLIST
#undef FS_ILIST

std::string at_line(const std::string& origin, int line) { return origin + ":" + std::to_string(line) + ": "; }

}  // namespace

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> n = {"linear-decay-sweep", "psi-sweep",     "gearhart-pruss", "suppression-demo",
                                             "blowup-demo",        "duhamel-check", "energy-audit",   "kernel-props"};
  return n;
}

RunConfig parse_config_string(const std::string& text, const std::string& origin) {
  RunConfig cfg;
  std::map<std::string, int> seen;
  std::istringstream in(text);
  std::string raw, section = "run";
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find_first_of("#;");
    std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') throw ConfigError(at_line(origin, line) + "malformed section header '" + s + "'");
      section = trim(s.substr(1, s.size() - 2));
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ConfigError(at_line(origin, line) + "expected 'key = value', got '" + s + "'");
    const std::string name = section + "." + trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    const auto& table = keys();
    const auto it = std::find_if(table.begin(), table.end(), [&](const Key& k) { return k.name == name; });
    if (it == table.end()) throw ConfigError(at_line(origin, line) + "unknown key '" + name + "'");
    try {
      it->set(cfg, value);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(at_line(origin, line) + name + ": " + e.what());
    }
    seen[name] = line;
  }

  auto line_of = [&](const std::string& k) { return seen.count(k) ? seen.at(k) : 0; };
  if (!seen.count("physics.alpha")) throw ConfigError(origin + ": missing required key 'physics.alpha'");
  if (!(cfg.sim.alpha > 0.0 && cfg.sim.alpha <= 2.0))
    throw ConfigError(at_line(origin, line_of("physics.alpha")) + "alpha = " + fmt(cfg.sim.alpha) +
                      " is outside the admissible range (0,2]");
  for (double a : cfg.sweep.alpha)
    if (!(a > 0.0 && a <= 2.0))
      throw ConfigError(at_line(origin, line_of("sweep.alpha")) + "sweep alpha = " + fmt(a) +
                        " is outside the admissible range (0,2]");
  for (double n : cfg.sweep.nu)
    if (!(n > 0.0)) throw ConfigError(at_line(origin, line_of("sweep.nu")) + "sweep nu values must be positive");
  const bool has_nu = seen.count("physics.nu") || seen.count("physics.A");
  if (!has_nu && cfg.sweep.nu.empty())
    throw ConfigError(origin + ": missing required key 'physics.nu' (or 'physics.A', or a 'sweep.nu' list)");
  if (has_nu && !(cfg.sim.nu > 0.0) && !(cfg.sim.A > 0.0))
    throw ConfigError(at_line(origin, std::max(line_of("physics.nu"), line_of("physics.A"))) +
                      "nu and A are both nonpositive; one must be positive");
  if (has_nu && !(cfg.sim.nu > 0.0)) cfg.sim.nu = 1.0 / cfg.sim.A;
  if (!has_nu) cfg.sim.nu = cfg.sweep.nu.front();
  if (std::find(scenario_names().begin(), scenario_names().end(), cfg.scenario) == scenario_names().end())
    throw ConfigError(at_line(origin, line_of("run.scenario")) + "unknown scenario '" + cfg.scenario + "'");
  if (cfg.workers < 1) throw ConfigError(at_line(origin, line_of("run.workers")) + "workers must be at least 1");
  try {
    TorusGrid g(cfg.sim.nx, cfg.sim.ny);
    cfg.sim.shear = ShearProfile::named(cfg.shear_name, std::max<std::size_t>(64, cfg.sim.ny));
    cfg.sim.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(origin + ": " + e.what());
  }
  if (cfg.sweep.alpha.empty()) cfg.sweep.alpha = {cfg.sim.alpha};
  return cfg;
}

RunConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open configuration file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_string(ss.str(), path.string());
}

std::string echo_config(const RunConfig& cfg) {
  std::ostringstream out;
  out << "# resolved configuration (fracshear " << FRACSHEAR_VERSION << ")\n";
  std::string section;
  for (const auto& k : keys()) {
    const auto dot = k.name.find('.');
    const std::string sec = k.name.substr(0, dot);
    if (sec != section) {
      out << (section.empty() ? "" : "\n") << "[" << sec << "]\n";
      section = sec;
    }
    out << k.name.substr(dot + 1) << " = " << k.get(cfg) << "\n";
  }
  return out.str();
}

}  // namespace fracshear
