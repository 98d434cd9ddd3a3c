#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "wgqed/operators.hpp"
#include "wgqed/spectra.hpp"

namespace wgqed {

// One digitized complex (I,Q) acquisition window.
struct TraceRecord {
  std::vector<Complex> samples;
  double rate_GSps = 1.0;    // sample rate
  double duration_ns = 0.0;  // window length; samples = rate * duration

  static TraceRecord allocate(double rate_GSps, double duration_ns);
  void validate() const;  // throws unless the count matches exactly
};

// |t|^2 = |t_p|^2 / (|t_bg|^2 + |r_bg|^2), same for reflection: removes
// the common chain gain using an off-resonant background reference.
std::pair<double, double> background_correct(Complex t_p, Complex r_p,
                                             Complex t_bg, Complex r_bg);

// Center of the synthesized band: the intermediate frequency snapped to
// the nearest FFT bin of the (rate, duration) window, in MHz. 25 MHz is
// not commensurate with the 122.0703125 kHz bin of the default window, so
// the coherent tone is placed on the closest bin (~25.024 MHz) to keep
// single-bin delta weights exact.
double snapped_if_MHz(double f_if_MHz, double rate_GSps, double duration_ns);

// Draws one stationary complex Gaussian trace whose ensemble PSD matches
// the incoherent spectrum, plus the coherent tone at the snapped IF. The
// spectrum's offset from its drive frequency maps to offset from the IF.
// Deterministic in (spectrum, seed, rate, duration, f_if). Throws if the
// occupied band spills past Nyquist.
TraceRecord synthesize_trace(const SpectrumTrace& spectrum, std::uint64_t seed,
                             double rate_GSps = 1.0, double duration_ns = 8192.0,
                             double f_if_MHz = 25.0);

struct PsdEstimate {
  std::vector<double> psd;  // per FFT bin, |X_k|^2 / (N * rate) averaged
  double bin_MHz = 0.0;     // rate / N
  double rate_GSps = 1.0;

  // Baseband frequency of bin k in MHz, in [-rate/2, rate/2).
  double freq_MHz(std::size_t k) const;
  // Sum psd * bin width = mean sample power (discrete Parseval).
  double total_power() const;
};

// Periodogram averaged over traces, rectangular window, FFT length = N.
PsdEstimate psd_estimate(const std::vector<TraceRecord>& traces);

// Complex amplitude of the f_if component: mean of samples * e^{-2 pi i
// f_if t_n}. Exact for bin-aligned tones.
Complex digital_downconvert(const TraceRecord& trace, double f_if_MHz = 25.0);

// Little-endian float32 interleaved I,Q plus a JSON sidecar
// "<path>.json" holding {rate_GSps, duration_ns, seed}.
void write_trace(const std::string& path, const TraceRecord& trace,
                 std::uint64_t seed);
TraceRecord read_trace(const std::string& path);

}  // namespace wgqed
