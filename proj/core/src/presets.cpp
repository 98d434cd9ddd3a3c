#include <algorithm>

#include "wgqed/scenario.hpp"

// Embedded figure-reproduction scenarios. Two flux-tunable qubits with
// maximum frequencies 6.89 and 6.84 GHz share an 18.6 mm separation that
// acts as one wavelength at the 6.4 GHz operating point and three quarter
// wavelengths at 4.8 GHz. Radiative rates are 26 MHz at 6.4 GHz and
// 13 MHz at 4.8 GHz; nonradiative and dephasing rates differ between the
// two operating points.

namespace wgqed {

using nlohmann::json;

namespace {

json qubit_block(double f_max_GHz, double g, double gamma_nr, double gamma_phi,
                 double fixed_freq_GHz = 0.0) {
  json q{{"f_max_GHz", f_max_GHz},
         {"anharmonicity_GHz", -0.298},
         {"g", g},
         {"flux_slope", 0.05},
         {"flux_offset", 0.0},
         {"gamma1_MHz_by_freq", json{{"6.4", 26.0}, {"4.8", 13.0}}},
         {"gamma_nr_MHz", gamma_nr},
         {"gamma_phi_MHz", gamma_phi}};
  if (fixed_freq_GHz > 0.0) q["freq_GHz"] = fixed_freq_GHz;
  return q;
}

json freq_window(double center_GHz, double half_span_GHz, int points) {
  return json{{"min", center_GHz - half_span_GHz},
              {"max", center_GHz + half_span_GHz},
              {"points", points}};
}

json make_preset(const std::string& name) {
  const double g1 = 0.0146, g2 = 0.0180;
  // Rates at the two operating points.
  const double nr_hi = 0.18, phi_hi = 0.2;  // 6.4 GHz
  const double nr_lo = 1.2, phi_lo = 1.8;   // 4.8 GHz

  if (name == "fig1b") {
    return json{
        {"name", "fig1b"},
        {"qubits", json::array({qubit_block(6.89, g1, nr_hi, phi_hi)})},
        {"geometry", {{"operating_freq_GHz", 6.4}}},
        {"drive",
         {{"rabi_MHz", json::array({1.4, 7.5, 20.0, 57.0})}, {"port", "left"}}},
        {"measurement",
         {{"type", "elastic_sweep"}, {"freq_GHz", freq_window(6.4, 0.2, 801)}}},
        {"seed", 1}};
  }
  if (name == "fig1c") {
    return json{
        {"name", "fig1c"},
        {"qubits", json::array({qubit_block(6.89, g1, nr_hi, phi_hi)})},
        {"geometry", {{"operating_freq_GHz", 6.4}}},
        {"drive", {{"rabi_MHz", json::array({57.0, 20.0})}, {"port", "left"}}},
        {"measurement", {{"type", "psd"}, {"port", "reflection"}}},
        {"seed", 1}};
  }
  if (name == "fig2a" || name == "fig2b") {
    json cfg{
        {"name", name},
        {"qubits",
         json::array({qubit_block(6.89, g1, nr_hi, phi_hi, 6.4),
                      qubit_block(6.84, g2, nr_hi, phi_hi, 6.4)})},
        {"geometry",
         {{"d_over_lambda", 1.0}, {"d_mm", 18.6}, {"operating_freq_GHz", 6.4}}},
        {"drive", {{"rabi_MHz", json::array({7.5})}, {"port", "left"}}},
        {"measurement",
         {{"type", "elastic_sweep"},
          {"freq_GHz", freq_window(6.4, 0.15, 301)}}},
        {"seed", 1}};
    if (name == "fig2a") {
      // Tune the second qubit through resonance by coil voltage while the
      // first stays parked at 6.4 GHz.
      cfg["qubits"][1].erase("freq_GHz");
      cfg["measurement"]["axis"] =
          json{{"qubit", 1},
               {"voltages", {{"min", 2.55}, {"max", 3.65}, {"points", 45}}}};
      cfg["measurement"]["freq_GHz"] = freq_window(6.4, 0.15, 151);
    }
    return cfg;
  }
  if (name == "fig2c" || name == "fig2d") {
    json cfg{
        {"name", name},
        {"qubits",
         json::array({qubit_block(6.89, g1, nr_lo, phi_lo, 4.8),
                      qubit_block(6.84, g2, nr_lo, phi_lo, 4.8)})},
        {"geometry",
         {{"d_over_lambda", 0.75},
          {"d_mm", 18.6},
          {"operating_freq_GHz", 4.8}}},
        {"drive", {{"rabi_MHz", json::array({8.7})}, {"port", "left"}}},
        {"measurement",
         {{"type", "elastic_sweep"},
          {"freq_GHz", freq_window(4.8, 0.15, 301)}}},
        {"seed", 1}};
    if (name == "fig2c") {
      cfg["qubits"][1].erase("freq_GHz");
      cfg["measurement"]["axis"] =
          json{{"qubit", 1},
               {"voltages", {{"min", 6.36}, {"max", 6.81}, {"points", 45}}}};
      cfg["measurement"]["freq_GHz"] = freq_window(4.8, 0.15, 151);
    }
    return cfg;
  }
  if (name == "fig3") {
    return json{
        {"name", "fig3"},
        {"qubits",
         json::array({qubit_block(6.89, g1, nr_hi, phi_hi, 6.4),
                      qubit_block(6.84, g2, nr_hi, phi_hi, 6.4)})},
        {"geometry",
         {{"d_over_lambda", 1.0}, {"d_mm", 18.6}, {"operating_freq_GHz", 6.4}}},
        {"drive",
         {{"rabi_MHz", json::array({45.0, 20.0, 7.0})}, {"port", "left"}}},
        {"measurement", {{"type", "psd"}, {"port", "reflection"}}},
        {"seed", 1}};
  }
  if (name == "fig4" || name == "fig4_lowpower") {
    json rabi = name == "fig4" ? json::array({30.0, 15.0}) : json::array({4.0});
    return json{
        {"name", name},
        {"qubits",
         json::array({qubit_block(6.89, g1, nr_lo, phi_lo, 4.8),
                      qubit_block(6.84, g2, nr_lo, phi_lo, 4.8)})},
        {"geometry",
         {{"d_over_lambda", 0.75},
          {"d_mm", 18.6},
          {"operating_freq_GHz", 4.8}}},
        {"drive", {{"rabi_MHz", rabi}, {"port", "left"}}},
        {"measurement", {{"type", "psd"}, {"port", "transmission"}}},
        {"seed", 1}};
  }
  throw ConfigError("unknown preset '" + name + "'");
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"fig1b", "fig1c", "fig2a", "fig2b", "fig2c",
          "fig2d", "fig3",  "fig4",  "fig4_lowpower"};
}

nlohmann::json preset_config(const std::string& name) {
  const auto names = preset_names();
  if (std::find(names.begin(), names.end(), name) == names.end())
    throw ConfigError("unknown preset '" + name + "'; available: fig1b fig1c "
                      "fig2a fig2b fig2c fig2d fig3 fig4 fig4_lowpower");
  return make_preset(name);
}

}  // namespace wgqed
