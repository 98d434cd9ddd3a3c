#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "wgqed/geometry.hpp"
#include "wgqed/spectra.hpp"
#include "wgqed/transmon.hpp"

namespace wgqed {

// Bad or inconsistent configuration input; message carries the offending
// field path. Maps to exit code 2 in the CLI.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Simulation-stage failure (degenerate steady state, non-convergent
// solve, failed sweep points). Maps to exit code 3 in the CLI.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct QubitConfig {
  double f_max_GHz = 0.0;
  double anharmonicity_GHz = 0.0;
  double g = 0.0;
  double flux_slope = 0.0;   // flux quanta per volt, for voltage sweeps
  double flux_offset = 0.0;  // flux quanta at zero volts
  std::map<double, double> gamma1_MHz_by_freq;  // operating freq -> gamma1
  double gamma_nr_MHz = 0.0;
  double gamma_phi_MHz = 0.0;
  double freq_GHz = 0.0;  // 0: tuned to the operating frequency

  TransmonParams transmon() const;
  // gamma1 at the table entry nearest to f_GHz.
  double gamma1_at(double f_GHz) const;
};

struct GeometryConfig {
  double d_over_lambda = 0.0;
  double operating_freq_GHz = 0.0;
  double d_mm = 0.0;  // 0: defaults to d_over_lambda * 20 mm

  Geometry build(std::size_t n_qubits) const;
};

struct ScenarioDrive {
  std::vector<double> rabi_MHz;  // one output set per entry
  double freq_GHz = 0.0;         // 0: the operating frequency
  Port input = Port::Left;
};

enum class MeasurementType { ElasticSweep, Psd, TimeTrace };

struct AxisSweep {
  int qubit = -1;  // <0: no axis sweep
  std::vector<double> voltages;
};

struct MeasurementConfig {
  MeasurementType type = MeasurementType::ElasticSweep;
  std::vector<double> freq_GHz;  // empty for PSD: adaptive default grid
  AxisSweep axis;                // elastic sweeps only
  Detection port = Detection::Reflection;
  int traces = 0;                // time-trace count
  double rate_GSps = 1.0;
  double duration_ns = 8192.0;
  double if_MHz = 25.0;
};

struct Scenario {
  std::string name;
  std::vector<QubitConfig> qubits;
  GeometryConfig geometry;
  ScenarioDrive drive;
  MeasurementConfig measurement;
  std::uint64_t seed = 1;
};

// Validating parse; throws ConfigError naming the offending field.
Scenario parse_scenario(const nlohmann::json& config);

// Embedded figure-reproduction presets, overridable field-by-field.
std::vector<std::string> preset_names();
nlohmann::json preset_config(const std::string& name);  // ConfigError if unknown

// Recursive merge: override wins, objects merge key-wise, everything
// else (arrays included) replaces wholesale.
nlohmann::json merge_config(nlohmann::json base, const nlohmann::json& override_cfg);

struct RunOptions {
  std::string out_dir = ".";
  std::uint64_t seed = 0;  // 0: use the scenario's seed
  int threads = 1;
};

struct RunSummary {
  nlohmann::json summary;              // derived quantities + file list
  std::vector<std::string> files;      // paths written, relative to out_dir
  std::vector<std::string> errors;     // per-point failures, if any
};

// Executes the scenario, writes data files and summary.json into
// options.out_dir. Deterministic for fixed scenario + seed. Throws
// ConfigError / NumericalError for global failures; per-point sweep
// failures are collected in the returned errors list.
RunSummary run(const Scenario& scenario, const RunOptions& options);

}  // namespace wgqed
