#include "wgqed/scenario.hpp"

#include <algorithm>
#include <cmath>

namespace wgqed {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError(path + ": " + what);
}

const json& require(const json& obj, const std::string& key,
                    const std::string& path) {
  if (!obj.is_object() || !obj.contains(key))
    fail(path + "." + key, "missing required field");
  return obj.at(key);
}

double number_at(const json& obj, const std::string& key,
                 const std::string& path) {
  const json& v = require(obj, key, path);
  if (!v.is_number()) fail(path + "." + key, "expected a number");
  return v.get<double>();
}

double number_or(const json& obj, const std::string& key, double fallback,
                 const std::string& path) {
  if (!obj.is_object() || !obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number()) fail(path + "." + key, "expected a number");
  return v.get<double>();
}

// Grid spec: either an explicit array or {"min", "max", "points"}.
std::vector<double> grid_at(const json& v, const std::string& path) {
  std::vector<double> out;
  if (v.is_array()) {
    for (const auto& x : v) {
      if (!x.is_number()) fail(path, "grid entries must be numbers");
      out.push_back(x.get<double>());
    }
  } else if (v.is_object()) {
    const double lo = number_at(v, "min", path);
    const double hi = number_at(v, "max", path);
    const json& pts = require(v, "points", path);
    if (!pts.is_number_integer() || pts.get<int>() < 2)
      fail(path + ".points", "expected an integer >= 2");
    const int n = pts.get<int>();
    if (!(hi > lo)) fail(path, "max must exceed min");
    for (int i = 0; i < n; ++i)
      out.push_back(lo + (hi - lo) * i / (n - 1));
  } else {
    fail(path, "expected an array or {min, max, points}");
  }
  if (out.empty()) fail(path, "grid is empty");
  if (!std::is_sorted(out.begin(), out.end()))
    fail(path, "grid must be ascending");
  return out;
}

QubitConfig parse_qubit(const json& q, const std::string& path) {
  QubitConfig out;
  out.f_max_GHz = number_at(q, "f_max_GHz", path);
  out.anharmonicity_GHz = number_at(q, "anharmonicity_GHz", path);
  out.g = number_or(q, "g", 0.0, path);
  out.flux_slope = number_or(q, "flux_slope", 0.0, path);
  out.flux_offset = number_or(q, "flux_offset", 0.0, path);
  out.gamma_nr_MHz = number_or(q, "gamma_nr_MHz", 0.0, path);
  out.gamma_phi_MHz = number_or(q, "gamma_phi_MHz", 0.0, path);
  out.freq_GHz = number_or(q, "freq_GHz", 0.0, path);
  const json& table = require(q, "gamma1_MHz_by_freq", path);
  if (!table.is_object() || table.empty())
    fail(path + ".gamma1_MHz_by_freq", "expected a non-empty object");
  for (const auto& [key, value] : table.items()) {
    double f = 0.0;
    try {
      f = std::stod(key);
    } catch (...) {
      fail(path + ".gamma1_MHz_by_freq", "key '" + key +
                                             "' is not a frequency in GHz");
    }
    if (!value.is_number() || value.get<double>() < 0.0)
      fail(path + ".gamma1_MHz_by_freq", "rates must be numbers >= 0");
    out.gamma1_MHz_by_freq[f] = value.get<double>();
  }
  if (out.gamma_nr_MHz < 0.0) fail(path + ".gamma_nr_MHz", "must be >= 0");
  if (out.gamma_phi_MHz < 0.0) fail(path + ".gamma_phi_MHz", "must be >= 0");
  try {
    out.transmon();
  } catch (const std::exception& e) {
    fail(path, e.what());
  }
  return out;
}

}  // namespace

TransmonParams QubitConfig::transmon() const {
  return TransmonParams::from_spectroscopy(f_max_GHz, anharmonicity_GHz, g);
}

double QubitConfig::gamma1_at(double f_GHz) const {
  if (gamma1_MHz_by_freq.empty())
    throw ConfigError("qubit gamma1_MHz_by_freq table is empty");
  double best = gamma1_MHz_by_freq.begin()->second;
  double best_dist = std::abs(gamma1_MHz_by_freq.begin()->first - f_GHz);
  for (const auto& [f, g1] : gamma1_MHz_by_freq) {
    const double dist = std::abs(f - f_GHz);
    if (dist < best_dist) {
      best = g1;
      best_dist = dist;
    }
  }
  return best;
}

Geometry GeometryConfig::build(std::size_t n_qubits) const {
  if (operating_freq_GHz <= 0.0)
    throw ConfigError("geometry.operating_freq_GHz: must be > 0");
  const double lambda =
      d_mm > 0.0 && d_over_lambda > 0.0 ? d_mm / d_over_lambda : 20.0;
  Geometry g;
  g.lambda_mm = lambda;
  g.operating_freq_GHz = operating_freq_GHz;
  if (n_qubits == 1) {
    g.positions_mm = {0.0};
  } else {
    if (d_over_lambda <= 0.0)
      throw ConfigError("geometry.d_over_lambda: must be > 0 for multiple "
                        "qubits");
    for (std::size_t j = 0; j < n_qubits; ++j)
      g.positions_mm.push_back(d_over_lambda * lambda *
                               static_cast<double>(j));
  }
  return g;
}

Scenario parse_scenario(const json& config) {
  if (!config.is_object()) throw ConfigError("scenario: expected an object");
  Scenario s;
  s.name = config.value("name", std::string("scenario"));

  const json& qubits = require(config, "qubits", "scenario");
  if (!qubits.is_array() || qubits.empty())
    fail("scenario.qubits", "expected a non-empty array");
  if (qubits.size() > 4) fail("scenario.qubits", "at most 4 qubits supported");
  for (std::size_t i = 0; i < qubits.size(); ++i)
    s.qubits.push_back(
        parse_qubit(qubits[i], "scenario.qubits[" + std::to_string(i) + "]"));

  const json& geo = require(config, "geometry", "scenario");
  s.geometry.operating_freq_GHz =
      number_at(geo, "operating_freq_GHz", "scenario.geometry");
  s.geometry.d_over_lambda =
      number_or(geo, "d_over_lambda", 0.0, "scenario.geometry");
  s.geometry.d_mm = number_or(geo, "d_mm", 0.0, "scenario.geometry");
  s.geometry.build(s.qubits.size());  // validates; result rebuilt at run time

  const json& drive = require(config, "drive", "scenario");
  s.drive.freq_GHz = number_or(drive, "freq_GHz", 0.0, "scenario.drive");
  const json& rabi = require(drive, "rabi_MHz", "scenario.drive");
  if (rabi.is_number()) {
    s.drive.rabi_MHz = {rabi.get<double>()};
  } else if (rabi.is_array() && !rabi.empty()) {
    for (const auto& r : rabi) {
      if (!r.is_number()) fail("scenario.drive.rabi_MHz", "expected numbers");
      s.drive.rabi_MHz.push_back(r.get<double>());
    }
  } else {
    fail("scenario.drive.rabi_MHz", "expected a number or non-empty array");
  }
  for (double r : s.drive.rabi_MHz)
    if (r < 0.0) fail("scenario.drive.rabi_MHz", "must be >= 0");
  const std::string port = drive.value("port", std::string("left"));
  if (port == "left")
    s.drive.input = Port::Left;
  else if (port == "right")
    s.drive.input = Port::Right;
  else
    fail("scenario.drive.port", "expected 'left' or 'right'");

  const json& meas = require(config, "measurement", "scenario");
  const std::string type = require(meas, "type", "scenario.measurement")
                               .get<std::string>();
  if (type == "elastic_sweep")
    s.measurement.type = MeasurementType::ElasticSweep;
  else if (type == "psd")
    s.measurement.type = MeasurementType::Psd;
  else if (type == "time_trace")
    s.measurement.type = MeasurementType::TimeTrace;
  else
    fail("scenario.measurement.type",
         "expected 'elastic_sweep', 'psd', or 'time_trace'");

  if (meas.contains("freq_GHz"))
    s.measurement.freq_GHz =
        grid_at(meas.at("freq_GHz"), "scenario.measurement.freq_GHz");
  else if (s.measurement.type == MeasurementType::ElasticSweep)
    fail("scenario.measurement.freq_GHz",
         "elastic sweeps need an explicit drive-frequency grid");

  if (meas.contains("axis")) {
    if (s.measurement.type != MeasurementType::ElasticSweep)
      fail("scenario.measurement.axis", "only valid for elastic sweeps");
    const json& axis = meas.at("axis");
    const json& qi = require(axis, "qubit", "scenario.measurement.axis");
    if (!qi.is_number_integer())
      fail("scenario.measurement.axis.qubit", "expected an integer");
    s.measurement.axis.qubit = qi.get<int>();
    if (s.measurement.axis.qubit < 0 ||
        s.measurement.axis.qubit >= static_cast<int>(s.qubits.size()))
      fail("scenario.measurement.axis.qubit", "out of range");
    s.measurement.axis.voltages =
        grid_at(require(axis, "voltages", "scenario.measurement.axis"),
                "scenario.measurement.axis.voltages");
  }

  const std::string mport = meas.value("port", std::string("reflection"));
  if (mport == "reflection")
    s.measurement.port = Detection::Reflection;
  else if (mport == "transmission")
    s.measurement.port = Detection::Transmission;
  else
    fail("scenario.measurement.port", "expected 'reflection' or 'transmission'");

  if (meas.contains("traces")) {
    const json& tr = meas.at("traces");
    if (!tr.is_number_integer() || tr.get<int>() < 1)
      fail("scenario.measurement.traces", "expected an integer >= 1");
    s.measurement.traces = tr.get<int>();
  }
  if (s.measurement.type == MeasurementType::TimeTrace &&
      s.measurement.traces < 1)
    fail("scenario.measurement.traces", "time traces need traces >= 1");
  s.measurement.rate_GSps =
      number_or(meas, "rate_GSps", 1.0, "scenario.measurement");
  s.measurement.duration_ns =
      number_or(meas, "duration_ns", 8192.0, "scenario.measurement");
  s.measurement.if_MHz = number_or(meas, "if_MHz", 25.0, "scenario.measurement");
  if (s.measurement.rate_GSps <= 0.0)
    fail("scenario.measurement.rate_GSps", "must be > 0");
  if (s.measurement.duration_ns <= 0.0)
    fail("scenario.measurement.duration_ns", "must be > 0");

  if (config.contains("seed")) {
    const json& seed = config.at("seed");
    if (!seed.is_number_integer() ||
        (seed.is_number_integer() && !seed.is_number_unsigned() &&
         seed.get<std::int64_t>() < 0))
      fail("scenario.seed", "expected a non-negative integer");
    s.seed = seed.get<std::uint64_t>();
  }
  return s;
}

json merge_config(json base, const json& override_cfg) {
  if (!base.is_object() || !override_cfg.is_object()) return override_cfg;
  for (const auto& [key, value] : override_cfg.items()) {
    if (base.contains(key) && base[key].is_object() && value.is_object())
      base[key] = merge_config(base[key], value);
    else
      base[key] = value;
  }
  return base;
}

}  // namespace wgqed
