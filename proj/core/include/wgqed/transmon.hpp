#pragma once

#include <utility>

namespace wgqed {

// One flux-tunable artificial atom, reduced to its |g>,|e> transition.
// The anharmonicity fixes the charging energy and enters only through the
// parameter derivation below; dynamics elsewhere are strictly two-level.
struct TransmonParams {
  double f_max_GHz = 0.0;         // |g>->|e> at zero flux
  double anharmonicity_GHz = 0.0; // negative
  double E_J_GHz = 0.0;
  double E_C_GHz = 0.0;
  double g = 0.0;                 // dimensionless line coupling, metadata

  // Fills E_J/E_C from spectroscopy and validates the transmon regime.
  static TransmonParams from_spectroscopy(double f_max_GHz,
                                          double anharmonicity_GHz,
                                          double g = 0.0);
};

struct LineParams {
  double c_t_F_per_m = 0.0;  // capacitance per unit length of the line
  double v_m_per_s = 0.0;    // phase velocity
  double c_g_F = 0.0;        // qubit-line coupling capacitance
};

// Inverts f_max = sqrt(8 E_J E_C) - E_C, E_C = -anharmonicity.
// Returns {E_J, E_C} in GHz.
std::pair<double, double> derive_energies(double f_max_GHz,
                                          double anharmonicity_GHz);

// f(phi) = sqrt(8 E_J E_C |cos(pi phi)|) - E_C, phi in units of the flux
// quantum. Throws std::domain_error where the model gives f <= 0 (near
// half flux).
double frequency_at_flux(const TransmonParams& p, double phi);

// Flux (monotone branch phi in [0, 0.5)) that tunes the qubit to f_GHz,
// by bisection. Requires 0 < f_GHz <= f_max.
double flux_for_frequency(const TransmonParams& p, double f_GHz);

// g = sqrt(e^2 c_t / (2 hbar pi v c_g^2)) * (E_J / (8 E_C))^(1/4)
double coupling_g(const TransmonParams& p, const LineParams& line);

void validate(const TransmonParams& p);
void validate(const LineParams& line);

}  // namespace wgqed
