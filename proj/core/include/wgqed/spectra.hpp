#pragma once

#include <vector>

#include "wgqed/geometry.hpp"
#include "wgqed/operators.hpp"

namespace wgqed {

enum class Detection { Transmission, Reflection };

// Emission spectrum at one port, split into the coherent delta at the
// drive and the incoherent part resolved over the frequency grid. PSD
// values are photon flux per MHz: integrating psd over freq (in MHz)
// recovers the incoherent photon emission rate into the port, in MHz
// (both as f = omega/2pi rates).
struct SpectrumTrace {
  std::vector<double> freq_GHz;  // absolute detected frequency, ascending
  std::vector<double> psd;       // incoherent PSD, MHz^-1 * MHz units
  double coherent_weight = 0.0;  // |<b>_ss|^2 / 2pi, photon flux in MHz
  double drive_freq_GHz = 0.0;
  Detection port = Detection::Reflection;

  // Trapezoid integral of the incoherent PSD over the grid, in MHz.
  double incoherent_integral() const;
};

// Quantum-regression spectrum of the port field b (see port_operator):
//   S(nu) = (1/pi) Re <vec(b^dag)^*, (i nu I - L + deflation)^{-1} vec(delta_b rho_ss)>
// evaluated at nu = 2 pi (f - f_d), with delta_b = b - <b>. The rank-one
// deflation vec(rho_ss) tr makes the resolvent regular at nu = 0 without
// changing the result for the trace-free regression seed. Grid in
// absolute GHz. Propagates DegenerateSteadyState from the steady state.
SpectrumTrace emission_spectrum(const EffectiveModel& model, Detection port,
                                const std::vector<double>& freq_GHz_grid,
                                int threads = 1);

// Total incoherent emission rate <delta_b^dag delta_b>_ss / 2pi in MHz;
// the Parseval partner of the integrated incoherent PSD.
double incoherent_rate(const EffectiveModel& model, Detection port);

// Zeroes the coherent delta weight, mirroring the removal of the elastic
// Rayleigh line before comparing incoherent spectra.
SpectrumTrace strip_coherent(SpectrumTrace trace);

// Frequency grid tuned for Parseval closure: a fine uniform core spanning
// the dressed-state region around the drive plus geometrically spaced
// tails out to +-1000 linewidths. Sorted, duplicate-free, in GHz.
std::vector<double> default_spectrum_grid(const EffectiveModel& model);

}  // namespace wgqed
