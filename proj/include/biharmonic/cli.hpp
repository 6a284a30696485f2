#pragma once
// Command-line front end: flat key-value parameters in, CSV or JSON data out,
// plus a JSON sidecar holding the fully resolved configuration so any run can
// be reproduced from the sidecar alone. All floating-point output is printed
// at 17 significant digits; reruns are byte-identical.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "grid.hpp"
#include "junction.hpp"
#include "numeric.hpp"
#include "shotnoise.hpp"
#include "version.hpp"
#include "waveform.hpp"

namespace biharmonic::cli {

enum class Command { Waveform, EfficiencyMap, IvMap, Channel, NoiseSweep };
enum class OutputFormat { Csv, Json };

struct RunConfig {
  Command command = Command::Waveform;
  std::map<std::string, std::string> parameters;
  OutputFormat output_format = OutputFormat::Csv;
};

inline const char* command_name(Command c) {
  switch (c) {
    case Command::Waveform: return "waveform";
    case Command::EfficiencyMap: return "efficiency-map";
    case Command::IvMap: return "iv-map";
    case Command::Channel: return "channel";
    case Command::NoiseSweep: return "noise-sweep";
  }
  return "waveform";
}

inline Command parse_command(const std::string& name) {
  if (name == "waveform") return Command::Waveform;
  if (name == "efficiency-map") return Command::EfficiencyMap;
  if (name == "iv-map") return Command::IvMap;
  if (name == "channel") return Command::Channel;
  if (name == "noise-sweep") return Command::NoiseSweep;
  throw std::invalid_argument("command: unknown command '" + name + "'");
}

inline std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace detail {

// Pulls typed values out of the flat parameter map, remembers every key it
// consumed and the value it resolved to (defaults included), and rejects any
// key nobody asked for.
class ParamReader {
 public:
  explicit ParamReader(const std::map<std::string, std::string>& params) : params_(params) {}

  std::string text(const std::string& key, const std::string& fallback) {
    const auto it = params_.find(key);
    const std::string value = it == params_.end() ? fallback : it->second;
    seen_.insert(key);
    resolved_[key] = value;
    return value;
  }

  double number(const std::string& key, double fallback) {
    const auto it = params_.find(key);
    if (it == params_.end()) {
      seen_.insert(key);
      resolved_[key] = fmt17(fallback);
      return fallback;
    }
    const char* s = it->second.c_str();
    char* end = nullptr;
    const double v = std::strtod(s, &end);
    if (end == s || *end != '\0')
      throw std::invalid_argument(key + ": not a number ('" + it->second + "')");
    seen_.insert(key);
    resolved_[key] = it->second;
    return v;
  }

  int integer(const std::string& key, int fallback) {
    const auto it = params_.find(key);
    if (it == params_.end()) {
      seen_.insert(key);
      resolved_[key] = std::to_string(fallback);
      return fallback;
    }
    const char* s = it->second.c_str();
    char* end = nullptr;
    const long v = std::strtol(s, &end, 10);
    if (end == s || *end != '\0')
      throw std::invalid_argument(key + ": not an integer ('" + it->second + "')");
    seen_.insert(key);
    resolved_[key] = it->second;
    return static_cast<int>(v);
  }

  grid::SweepGrid grid_spec(const std::string& key, const std::string& fallback) {
    const std::string value = text(key, fallback);
    try {
      return grid::SweepGrid::parse(value);
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(key + ": " + e.what());
    }
  }

  waveform::Family family(const std::string& key, waveform::Family fallback) {
    const std::string value = text(key, fallback == waveform::Family::CosCos ? "cos-cos" : "sin-sin");
    if (value == "cos-cos") return waveform::Family::CosCos;
    if (value == "sin-sin") return waveform::Family::SinSin;
    throw std::invalid_argument(key + ": must be cos-cos or sin-sin, not '" + value + "'");
  }

  void finish() const {
    for (const auto& [key, value] : params_) {
      if (seen_.count(key) == 0) throw std::invalid_argument(key + ": unknown parameter");
    }
  }

  const std::map<std::string, std::string>& resolved() const { return resolved_; }

 private:
  std::map<std::string, std::string> params_;
  std::set<std::string> seen_;
  std::map<std::string, std::string> resolved_;
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  nlohmann::ordered_json results = nlohmann::ordered_json::object();
  nlohmann::ordered_json tolerances = nlohmann::ordered_json::object();
};

inline double default_theta(waveform::Family family) {
  return family == waveform::Family::CosCos ? 0.0 : 0.5 * numeric::pi;
}

inline Table run_waveform(ParamReader& reader) {
  const waveform::Family fam = reader.family("family", waveform::Family::CosCos);
  const double alpha = reader.number("alpha", 1.0);
  const double theta = reader.number("theta", default_theta(fam));
  const double amplitude = reader.number("amplitude", 1.0);
  const double omega = reader.number("omega", 1.0);
  const grid::SweepGrid zg = reader.grid_spec("zeta-grid", "0:1:201");
  reader.finish();

  Table t;
  t.columns = {"zeta", "maximum", "minimum", "load_term", "eta_ac", "impulse"};
  double best_eta = -1e300, best_zeta = 0.0;
  for (const double zeta : zg.points()) {
    waveform::BiharmonicSpec spec;
    spec.family = fam;
    spec.zeta = zeta;
    spec.alpha = alpha;
    spec.theta = theta;
    spec.amplitude = amplitude;
    spec.omega = omega;
    const waveform::NormalizedWaveform norm = waveform::normalize(spec);
    const double eta = 2.0 * norm.extrema.load_term;
    t.rows.push_back({zeta, norm.extrema.maximum, norm.extrema.minimum, norm.extrema.load_term, eta,
                      waveform::impulse(norm)});
    if (eta > best_eta) {
      best_eta = eta;
      best_zeta = zeta;
    }
  }
  t.results["max_eta_ac"] = best_eta;
  t.results["argmax_zeta"] = best_zeta;
  return t;
}

inline junction::OdeSettings read_ode_settings(ParamReader& reader, double amplitude_fallback,
                                               bool with_search_tolerances) {
  junction::OdeSettings st;
  st.amplitude = reader.number("amplitude", amplitude_fallback);
  st.omega = reader.number("omega", 0.01);
  st.control = junction::default_control(st.omega);
  st.control.dt = reader.number("dt", 0.0);
  st.control.transient_periods = reader.integer("transient", st.control.transient_periods);
  st.control.average_periods = reader.integer("average", st.control.average_periods);
  if (with_search_tolerances) {
    st.v_threshold = reader.number("v-threshold", 1e-4);
    st.i_tolerance = reader.number("i-tolerance", 1e-4);
  }
  return st;
}

inline Table run_efficiency_map(ParamReader& reader) {
  const waveform::Family fam = reader.family("family", waveform::Family::CosCos);
  const double theta = reader.number("theta", default_theta(fam));
  const grid::SweepGrid ag = reader.grid_spec("alpha-grid", "0.05:4:80");
  const grid::SweepGrid zg = reader.grid_spec("zeta-grid", "0:1:201");
  const std::string mode_text = reader.text("mode", "closed-form");
  junction::MapMode mode;
  if (mode_text == "closed-form") mode = junction::MapMode::ClosedForm;
  else if (mode_text == "ode") mode = junction::MapMode::Ode;
  else throw std::invalid_argument("mode: must be closed-form or ode, not '" + mode_text + "'");
  const junction::OdeSettings st = read_ode_settings(reader, 1.0, true);
  reader.finish();

  const junction::EfficiencyMap m = junction::efficiency_map(ag, zg, fam, theta, mode, st);
  Table t;
  t.columns = {"zeta", "alpha", "eta_ac", "zeta_opt"};
  const size_t n_cols = m.map.cols.size();
  for (size_t r = 0; r < m.map.rows.size(); ++r) {
    for (size_t c = 0; c < n_cols; ++c) {
      t.rows.push_back({m.map.cols[c], m.map.rows[r], m.map.values[r * n_cols + c], m.zeta_opt[r]});
    }
  }
  t.results["masked_cells"] = m.map.masked;
  if (mode == junction::MapMode::Ode) {
    t.tolerances["v_threshold"] = st.v_threshold;
    t.tolerances["i_tolerance"] = st.i_tolerance;
  }
  return t;
}

inline Table run_iv_map(ParamReader& reader) {
  const waveform::Family fam = reader.family("family", waveform::Family::SinSin);
  const double theta = reader.number("theta", default_theta(fam));
  const double alpha = reader.number("alpha", 1.0);
  const double i0 = reader.number("i0", 1.18);
  const double ic = reader.number("ic", 1.18);
  if (!(ic > 0.0)) throw std::invalid_argument("ic: must be > 0");
  if (!(i0 >= 0.0)) throw std::invalid_argument("i0: must be >= 0");
  const grid::SweepGrid lg = reader.grid_spec("lambda-grid", "-3:3:13");
  const grid::SweepGrid ig_lab = reader.grid_spec("i-grid", "0:1.5:13");
  junction::OdeSettings st;
  st.omega = reader.number("omega", 0.01);
  st.amplitude = i0 / ic;
  st.control = junction::default_control(st.omega);
  st.control.dt = reader.number("dt", 0.0);
  st.control.transient_periods = reader.integer("transient", st.control.transient_periods);
  st.control.average_periods = reader.integer("average", st.control.average_periods);
  reader.finish();

  const grid::SweepGrid ig{ig_lab.start / ic, ig_lab.stop / ic, ig_lab.count};
  const junction::VoltageMap m = junction::voltage_map(lg, ig, fam, theta, alpha, st);
  Table t;
  t.columns = {"i_dc", "log_zeta_ratio", "v_jj", "channel_lower", "channel_upper"};
  const size_t n_cols = m.map.cols.size();
  for (size_t r = 0; r < m.map.rows.size(); ++r) {
    for (size_t c = 0; c < n_cols; ++c) {
      t.rows.push_back({m.map.cols[c] * ic, m.map.rows[r], m.map.values[r * n_cols + c],
                        m.channel_lower[r] * ic, m.channel_upper[r] * ic});
    }
  }
  t.results["masked_cells"] = m.map.masked;
  return t;
}

inline Table run_channel(ParamReader& reader) {
  const waveform::Family fam = reader.family("family", waveform::Family::SinSin);
  const double theta = reader.number("theta", default_theta(fam));
  const double alpha = reader.number("alpha", 1.0);
  const double i0 = reader.number("i0", 1.18);
  const double ic = reader.number("ic", 1.18);
  if (!(ic > 0.0)) throw std::invalid_argument("ic: must be > 0");
  if (!(i0 >= 0.0)) throw std::invalid_argument("i0: must be >= 0");
  const grid::SweepGrid lg = reader.grid_spec("lambda-grid", "-3:3:121");
  reader.finish();

  Table t;
  t.columns = {"zeta", "log_zeta_ratio", "lower", "upper"};
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (const double lambda : lg.points()) {
    const double zeta = 1.0 / (1.0 + std::pow(10.0, lambda));
    const auto window = junction::adiabatic_channel(fam, alpha, theta, zeta, i0 / ic);
    if (window) t.rows.push_back({zeta, lambda, window->first * ic, window->second * ic});
    else t.rows.push_back({zeta, lambda, nan, nan});
  }
  return t;
}

inline Table run_noise_sweep(ParamReader& reader) {
  const double total = reader.number("total", 8.1);
  shotnoise::NoiseSetup setup;
  setup.q = reader.number("q", 4.0);
  setup.conductance = reader.number("conductance", 1.0);
  setup.fano = reader.number("fano", 1.0);
  const double phi = reader.number("phi", 0.0);
  const grid::SweepGrid zg = reader.grid_spec("zeta-grid", "0.01:0.99:491");
  reader.finish();

  const shotnoise::NoiseSweepResult sweep = shotnoise::noise_sweep(total, setup, phi, zg);
  Table t;
  t.columns = {"zeta", "S", "S_ac"};
  for (size_t k = 0; k < sweep.zeta.size(); ++k) {
    t.rows.push_back({sweep.zeta[k], sweep.s[k], sweep.s_ac[k]});
  }
  t.results["argmin_s"] = sweep.argmin_s;
  t.results["min_s"] = sweep.min_s;
  t.results["argmin_s_ac"] = sweep.argmin_s_ac;
  t.results["min_s_ac"] = sweep.min_s_ac;
  t.results["n_bias"] = sweep.n_bias;
  t.results["masked_cells"] = sweep.masked;
  t.tolerances["tail_tol"] = 1e-12;
  return t;
}

inline void write_text(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << body;
  if (!out.flush()) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace detail

// Re-runs a job from its sidecar.
inline RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("config: '" + path + "' is not valid JSON (" + e.what() + ")");
  }
  if (!doc.is_object() || !doc.contains("command") || !doc["command"].is_string())
    throw std::invalid_argument("config: missing string field 'command'");
  RunConfig config;
  config.command = parse_command(doc["command"].get<std::string>());
  if (doc.contains("output_format")) {
    const std::string fmt = doc["output_format"].get<std::string>();
    if (fmt == "csv") config.output_format = OutputFormat::Csv;
    else if (fmt == "json") config.output_format = OutputFormat::Json;
    else throw std::invalid_argument("output_format: must be csv or json, not '" + fmt + "'");
  }
  if (doc.contains("parameters")) {
    if (!doc["parameters"].is_object())
      throw std::invalid_argument("config: 'parameters' must be an object of strings");
    for (const auto& [key, value] : doc["parameters"].items()) {
      if (!value.is_string())
        throw std::invalid_argument("config: parameter '" + key + "' must be a string");
      config.parameters[key] = value.get<std::string>();
    }
  }
  return config;
}

// 0 on success, 2 on an invalid parameter, 1 on a computation or I/O failure.
inline int run(const RunConfig& config) {
  try {
    detail::ParamReader reader(config.parameters);
    const bool csv = config.output_format == OutputFormat::Csv;
    const std::string output =
        reader.text("output", std::string(command_name(config.command)) + (csv ? ".csv" : ".json"));

    detail::Table table;
    switch (config.command) {
      case Command::Waveform: table = detail::run_waveform(reader); break;
      case Command::EfficiencyMap: table = detail::run_efficiency_map(reader); break;
      case Command::IvMap: table = detail::run_iv_map(reader); break;
      case Command::Channel: table = detail::run_channel(reader); break;
      case Command::NoiseSweep: table = detail::run_noise_sweep(reader); break;
    }

    std::string body;
    if (csv) {
      std::ostringstream out;
      for (size_t c = 0; c < table.columns.size(); ++c) {
        out << (c ? "," : "") << table.columns[c];
      }
      out << "\n";
      for (const auto& row : table.rows) {
        for (size_t c = 0; c < row.size(); ++c) {
          out << (c ? "," : "") << fmt17(row[c]);
        }
        out << "\n";
      }
      body = out.str();
    } else {
      nlohmann::ordered_json doc;
      doc["columns"] = table.columns;
      doc["data"] = table.rows;
      body = doc.dump(2) + "\n";
    }
    detail::write_text(output, body);

    nlohmann::ordered_json sidecar;
    sidecar["tool"] = "biharmonic";
    sidecar["version"] = version;
    sidecar["command"] = command_name(config.command);
    sidecar["output_format"] = csv ? "csv" : "json";
    sidecar["parameters"] = reader.resolved();
    sidecar["tolerances"] = table.tolerances;
    sidecar["results"] = table.results;
    const std::string sidecar_path = output + ".meta.json";
    detail::write_text(sidecar_path, sidecar.dump(2) + "\n");

    std::cout << "wrote " << output << " (" << table.rows.size() << " rows) and " << sidecar_path
              << "\n";
    return 0;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid parameter: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace biharmonic::cli
