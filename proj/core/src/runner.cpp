#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "wgqed/lindblad.hpp"
#include "wgqed/scattering.hpp"
#include "wgqed/scenario.hpp"
#include "wgqed/signal.hpp"
#include "wgqed/units.hpp"

namespace wgqed {

using nlohmann::json;

namespace {

std::string format_rabi(double rabi_MHz) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", rabi_MHz);
  return buf;
}

// Qubit transition frequencies with every non-swept qubit either pinned
// by config or parked at the operating point; the axis qubit follows its
// coil voltage through the flux map.
std::vector<double> qubit_frequencies(const Scenario& sc, int axis_qubit,
                                      double voltage) {
  std::vector<double> f;
  for (std::size_t j = 0; j < sc.qubits.size(); ++j) {
    const auto& q = sc.qubits[j];
    if (static_cast<int>(j) == axis_qubit) {
      const double phi = q.flux_slope * voltage + q.flux_offset;
      f.push_back(frequency_at_flux(q.transmon(), phi));
    } else if (q.freq_GHz > 0.0) {
      f.push_back(q.freq_GHz);
    } else {
      f.push_back(sc.geometry.operating_freq_GHz);
    }
  }
  return f;
}

RateSet rates_at_operating(const Scenario& sc) {
  RateSet r;
  for (const auto& q : sc.qubits) {
    r.gamma1_MHz.push_back(q.gamma1_at(sc.geometry.operating_freq_GHz));
    r.gamma_nr_MHz.push_back(q.gamma_nr_MHz);
    r.gamma_phi_MHz.push_back(q.gamma_phi_MHz);
  }
  return r;
}

json derived_quantities(const Scenario& sc) {
  const RateSet rates = rates_at_operating(sc);
  const std::size_t n = sc.qubits.size();
  json d;
  json t_min = json::array();
  json flux = json::array();
  for (std::size_t j = 0; j < n; ++j) {
    const double g1 = rates.gamma1_MHz[j];
    const double denom =
        g1 + rates.gamma_nr_MHz[j] + 2.0 * rates.gamma_phi_MHz[j];
    t_min.push_back(denom > 0.0 ? 1.0 - g1 / denom : 1.0);
    flux.push_back(flux_for_frequency(sc.qubits[j].transmon(),
                                      sc.geometry.operating_freq_GHz));
  }
  d["t_min"] = t_min;
  d["flux_bias"] = flux;
  if (n >= 2) {
    const double dl = sc.geometry.build(n).d_over_lambda();
    const double J =
        exchange_rate(rates.gamma1_MHz[0], rates.gamma1_MHz[1], dl);
    const double g12 =
        correlated_decay(rates.gamma1_MHz[0], rates.gamma1_MHz[1], dl);
    const double mean_g1 =
        0.5 * (rates.gamma1_MHz[0] + rates.gamma1_MHz[1]);
    const double mean_nr =
        0.5 * (rates.gamma_nr_MHz[0] + rates.gamma_nr_MHz[1]);
    const double mean_phi =
        0.5 * (rates.gamma_phi_MHz[0] + rates.gamma_phi_MHz[1]);
    d["two_J_MHz"] = 2.0 * J;
    d["gamma12_MHz"] = g12;
    d["Gamma_B_MHz"] = mean_g1 + std::abs(g12);
    d["Gamma_D_MHz"] = mean_g1 - std::abs(g12) + mean_nr + mean_phi;
    d["d_over_lambda"] = dl;
  }
  return d;
}

EffectiveModel model_at(const Scenario& sc, double drive_freq_GHz,
                        double rabi_MHz, int axis_qubit, double voltage) {
  DriveSpec drive;
  drive.freq_GHz = drive_freq_GHz;
  drive.rabi_MHz = rabi_MHz;
  drive.input = sc.drive.input;
  return build_effective_model(qubit_frequencies(sc, axis_qubit, voltage),
                               sc.geometry.build(sc.qubits.size()),
                               rates_at_operating(sc), drive);
}

// Uniform spectrum grid clipped to the band the synthesizer can place
// inside Nyquist after the shift to the intermediate frequency.
std::vector<double> trace_spectrum_grid(const Scenario& sc,
                                        const EffectiveModel& model) {
  const double rate_MHz = 1e3 * sc.measurement.rate_GSps;
  const double f_if = sc.measurement.if_MHz;
  double width = 0.0;
  for (int j = 0; j < model.size(); ++j)
    width += MHz_from_angular(model.decay(j, j) + 2.0 * model.dephasing(j));
  const double wanted = MHz_from_angular(model.omega_ref) + 8.0 * width;
  const double cap = 0.5 * rate_MHz - std::abs(f_if) - 2.0;
  const double half = std::min(wanted, cap);
  if (half <= 0.0)
    throw NumericalError("time_trace: no usable band inside Nyquist");
  std::vector<double> grid;
  const int n = 4001;
  for (int i = 0; i < n; ++i)
    grid.push_back(model.drive_freq_GHz +
                   GHz_from_MHz(-half + 2.0 * half * i / (n - 1)));
  return grid;
}

void write_psd_csv(const std::string& path, const SpectrumTrace& trace) {
  std::ofstream os(path);
  if (!os) throw NumericalError("cannot open output file " + path);
  os.precision(12);
  os << "freq_GHz,psd_incoherent,coherent_weight_at_drive\n";
  for (std::size_t i = 0; i < trace.freq_GHz.size(); ++i) {
    os << trace.freq_GHz[i] << ',' << trace.psd[i] << ',';
    if (i == 0) os << trace.coherent_weight;
    os << '\n';
  }
}

void write_psd_metadata(const std::string& path, const Scenario& sc,
                        const SpectrumTrace& trace, double rabi_MHz,
                        std::uint64_t seed) {
  const RateSet rates = rates_at_operating(sc);
  json meta{
      {"port", trace.port == Detection::Reflection ? "reflection"
                                                   : "transmission"},
      {"drive_freq_GHz", trace.drive_freq_GHz},
      {"rabi_MHz", rabi_MHz},
      {"operating_freq_GHz", sc.geometry.operating_freq_GHz},
      {"coherent_weight", trace.coherent_weight},
      {"incoherent_integral", trace.incoherent_integral()},
      {"gamma1_MHz", rates.gamma1_MHz},
      {"gamma_nr_MHz", rates.gamma_nr_MHz},
      {"gamma_phi_MHz", rates.gamma_phi_MHz},
      {"seed", seed}};
  std::ofstream os(path);
  if (!os) throw NumericalError("cannot open output file " + path);
  os << meta.dump(2) << '\n';
}

}  // namespace

RunSummary run(const Scenario& sc, const RunOptions& options) {
  namespace fs = std::filesystem;
  fs::path out_dir(options.out_dir.empty() ? "." : options.out_dir);
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec || !fs::is_directory(out_dir))
    throw ConfigError("output directory '" + out_dir.string() +
                      "' is not writable");
  const std::uint64_t seed = options.seed ? options.seed : sc.seed;
  const double drive_center = sc.drive.freq_GHz > 0.0
                                  ? sc.drive.freq_GHz
                                  : sc.geometry.operating_freq_GHz;

  RunSummary result;
  result.summary = json{{"name", sc.name},
                        {"seed", seed},
                        {"derived", derived_quantities(sc)},
                        {"outputs", json::array()},
                        {"errors", json::array()}};

  auto emit = [&](const std::string& file) {
    result.files.push_back(file);
    result.summary["outputs"].push_back(file);
  };
  auto record_error = [&](const std::string& what) {
    result.errors.push_back(what);
    result.summary["errors"].push_back(what);
  };

  for (double rabi : sc.drive.rabi_MHz) {
    const std::string tag = sc.name + "_rabi" + format_rabi(rabi);
    try {
      switch (sc.measurement.type) {
        case MeasurementType::ElasticSweep: {
          const bool has_axis = sc.measurement.axis.qubit >= 0;
          const std::vector<double> axis =
              has_axis ? sc.measurement.axis.voltages
                       : std::vector<double>{0.0};
          const int axis_qubit = has_axis ? sc.measurement.axis.qubit : -1;
          auto rows = sweep_elastic(
              [&](double f, double v) {
                return model_at(sc, f, rabi, axis_qubit, v);
              },
              sc.measurement.freq_GHz, axis, options.threads);
          for (const auto& row : rows)
            if (!row.ok)
              record_error(tag + " at " + std::to_string(row.drive_freq_GHz) +
                           " GHz: " + row.error);
          const std::string file = tag + "_elastic.csv";
          std::ofstream os(out_dir / file);
          if (!os) throw NumericalError("cannot open output file " + file);
          write_sweep_csv(os, rows);
          emit(file);
          break;
        }
        case MeasurementType::Psd: {
          const EffectiveModel model =
              model_at(sc, drive_center, rabi, -1, 0.0);
          const std::vector<double> grid =
              sc.measurement.freq_GHz.empty() ? default_spectrum_grid(model)
                                              : sc.measurement.freq_GHz;
          const SpectrumTrace trace = emission_spectrum(
              model, sc.measurement.port, grid, options.threads);
          const std::string file = tag + "_psd.csv";
          write_psd_csv((out_dir / file).string(), trace);
          write_psd_metadata((out_dir / (tag + "_psd.json")).string(), sc,
                            trace, rabi, seed);
          emit(file);
          emit(tag + "_psd.json");
          break;
        }
        case MeasurementType::TimeTrace: {
          const EffectiveModel model =
              model_at(sc, drive_center, rabi, -1, 0.0);
          const std::vector<double> grid =
              sc.measurement.freq_GHz.empty() ? trace_spectrum_grid(sc, model)
                                              : sc.measurement.freq_GHz;
          const SpectrumTrace trace = emission_spectrum(
              model, sc.measurement.port, grid, options.threads);
          std::vector<TraceRecord> records;
          records.reserve(static_cast<std::size_t>(sc.measurement.traces));
          for (int k = 0; k < sc.measurement.traces; ++k) {
            records.push_back(synthesize_trace(
                trace, seed + static_cast<std::uint64_t>(k),
                sc.measurement.rate_GSps, sc.measurement.duration_ns,
                sc.measurement.if_MHz));
            const std::string file =
                tag + "_trace" + std::to_string(k) + ".bin";
            write_trace((out_dir / file).string(), records.back(),
                        seed + static_cast<std::uint64_t>(k));
            emit(file);
            emit(file + ".json");
          }
          const PsdEstimate est = psd_estimate(records);
          const std::string file = tag + "_psd_estimate.csv";
          std::ofstream os(out_dir / file);
          if (!os) throw NumericalError("cannot open output file " + file);
          os.precision(12);
          os << "freq_MHz,psd\n";
          for (std::size_t k = 0; k < est.psd.size(); ++k)
            os << est.freq_MHz(k) << ',' << est.psd[k] << '\n';
          emit(file);
          break;
        }
      }
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      record_error(tag + ": " + e.what());
    }
  }

  std::ofstream os(out_dir / "summary.json");
  if (!os) throw NumericalError("cannot write summary.json");
  os << result.summary.dump(2) << '\n';
  result.files.push_back("summary.json");
  return result;
}

}  // namespace wgqed
