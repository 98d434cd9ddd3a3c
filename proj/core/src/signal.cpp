#include "wgqed/signal.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <random>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "wgqed/units.hpp"

namespace wgqed {

namespace {

// FFTW planning mutates global state; execution on distinct buffers is
// safe. One lock around plan creation/destruction keeps callers free to
// thread over traces.
std::mutex& fftw_mutex() {
  static std::mutex m;
  return m;
}

class FftPlan {
 public:
  FftPlan(int n, int sign) : n_(n) {
    std::lock_guard<std::mutex> lock(fftw_mutex());
    buf_ = fftw_alloc_complex(static_cast<std::size_t>(n));
    plan_ = fftw_plan_dft_1d(n, buf_, buf_, sign, FFTW_ESTIMATE);
    if (!plan_ || !buf_) throw std::runtime_error("FFTW plan failed");
  }
  ~FftPlan() {
    std::lock_guard<std::mutex> lock(fftw_mutex());
    fftw_destroy_plan(plan_);
    fftw_free(buf_);
  }
  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;

  // In-place transform of v (length n).
  void run(std::vector<Complex>& v) {
    for (int i = 0; i < n_; ++i) {
      buf_[i][0] = v[static_cast<std::size_t>(i)].real();
      buf_[i][1] = v[static_cast<std::size_t>(i)].imag();
    }
    fftw_execute(plan_);
    for (int i = 0; i < n_; ++i)
      v[static_cast<std::size_t>(i)] = Complex(buf_[i][0], buf_[i][1]);
  }

 private:
  int n_;
  fftw_complex* buf_ = nullptr;
  fftw_plan plan_ = nullptr;
};

std::size_t sample_count(double rate_GSps, double duration_ns) {
  const double n = rate_GSps * duration_ns;
  const double rounded = std::round(n);
  if (!(n > 0.0) || std::abs(n - rounded) > 1e-9 * std::max(1.0, n))
    throw std::invalid_argument("trace: rate * duration must be a positive "
                                "integer sample count");
  return static_cast<std::size_t>(rounded);
}

double bin_width_MHz(double rate_GSps, std::size_t n) {
  return 1e3 * rate_GSps / static_cast<double>(n);
}

}  // namespace

TraceRecord TraceRecord::allocate(double rate_GSps, double duration_ns) {
  TraceRecord t;
  t.rate_GSps = rate_GSps;
  t.duration_ns = duration_ns;
  t.samples.assign(sample_count(rate_GSps, duration_ns), Complex(0.0, 0.0));
  return t;
}

void TraceRecord::validate() const {
  if (samples.size() != sample_count(rate_GSps, duration_ns))
    throw std::invalid_argument("TraceRecord: sample count does not equal "
                                "rate * duration");
}

std::pair<double, double> background_correct(Complex t_p, Complex r_p,
                                             Complex t_bg, Complex r_bg) {
  const double denom = std::norm(t_bg) + std::norm(r_bg);
  if (denom <= 0.0)
    throw std::invalid_argument("background_correct: zero background power");
  return {std::norm(t_p) / denom, std::norm(r_p) / denom};
}

double snapped_if_MHz(double f_if_MHz, double rate_GSps, double duration_ns) {
  const std::size_t n = sample_count(rate_GSps, duration_ns);
  const double bin = bin_width_MHz(rate_GSps, n);
  return std::round(f_if_MHz / bin) * bin;
}

TraceRecord synthesize_trace(const SpectrumTrace& spectrum, std::uint64_t seed,
                             double rate_GSps, double duration_ns,
                             double f_if_MHz) {
  TraceRecord trace = TraceRecord::allocate(rate_GSps, duration_ns);
  const std::size_t n = trace.samples.size();
  const double rate_MHz = 1e3 * rate_GSps;
  const double bin = bin_width_MHz(rate_GSps, n);
  const double f_if = snapped_if_MHz(f_if_MHz, rate_GSps, duration_ns);

  // Band check: every nonzero spectral sample must fit inside Nyquist
  // after shifting to the intermediate frequency.
  for (std::size_t i = 0; i < spectrum.freq_GHz.size(); ++i) {
    if (spectrum.psd[i] == 0.0) continue;
    const double off =
        MHz_from_GHz(spectrum.freq_GHz[i] - spectrum.drive_freq_GHz);
    if (std::abs(off + f_if) >= 0.5 * rate_MHz)
      throw std::invalid_argument("synthesize_trace: spectrum exceeds the "
                                  "Nyquist band after down-conversion");
  }
  if (std::abs(f_if) >= 0.5 * rate_MHz)
    throw std::invalid_argument("synthesize_trace: IF outside Nyquist band");

  // Independent Gaussian spectral amplitudes with variance matched to the
  // target PSD make the synthesized process stationary with exactly the
  // requested ensemble periodogram: E|X_k|^2 = S(f_k) N rate.
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<Complex> freq_bins(n, Complex(0.0, 0.0));
  auto target_psd = [&](double f_MHz) -> double {
    // Linear interpolation over the spectrum's offset-from-drive axis.
    const double off = f_MHz - f_if;  // offset from drive after shifting
    const auto& fg = spectrum.freq_GHz;
    if (fg.size() < 2) return 0.0;
    const double lo = MHz_from_GHz(fg.front() - spectrum.drive_freq_GHz);
    const double hi = MHz_from_GHz(fg.back() - spectrum.drive_freq_GHz);
    if (off <= lo || off >= hi) return 0.0;
    std::size_t a = 0, b = fg.size() - 1;
    while (b - a > 1) {
      const std::size_t mid = (a + b) / 2;
      if (MHz_from_GHz(fg[mid] - spectrum.drive_freq_GHz) <= off)
        a = mid;
      else
        b = mid;
    }
    const double fa = MHz_from_GHz(fg[a] - spectrum.drive_freq_GHz);
    const double fb = MHz_from_GHz(fg[b] - spectrum.drive_freq_GHz);
    const double w = (off - fa) / (fb - fa);
    return (1.0 - w) * spectrum.psd[a] + w * spectrum.psd[b];
  };

  for (std::size_t k = 0; k < n; ++k) {
    const double f_k = k < n / 2 ? bin * static_cast<double>(k)
                                 : bin * (static_cast<double>(k) -
                                          static_cast<double>(n));
    const double s = target_psd(f_k);
    if (s <= 0.0) continue;
    const double sigma = std::sqrt(0.5 * s * static_cast<double>(n) * rate_MHz);
    freq_bins[k] = Complex(sigma * gauss(rng), sigma * gauss(rng));
  }
  // Coherent tone: a single-bin delta carrying the full weight. Power
  // |A|^2 equals the coherent photon flux; in the frequency domain the
  // bin amplitude is A N (FFT of A e^{2 pi i f t} over an aligned bin).
  if (spectrum.coherent_weight > 0.0) {
    const double k_if = f_if / bin;
    const std::size_t k =
        static_cast<std::size_t>(std::lround(k_if >= 0 ? k_if : k_if + double(n)));
    freq_bins[k % n] += std::sqrt(spectrum.coherent_weight) *
                        static_cast<double>(n);
  }

  FftPlan inverse(static_cast<int>(n), FFTW_BACKWARD);
  inverse.run(freq_bins);
  for (std::size_t i = 0; i < n; ++i)
    trace.samples[i] = freq_bins[i] / static_cast<double>(n);
  return trace;
}

double PsdEstimate::freq_MHz(std::size_t k) const {
  const std::size_t n = psd.size();
  const double f = bin_MHz * static_cast<double>(k);
  return k < n / 2 ? f : f - 1e3 * rate_GSps;
}

double PsdEstimate::total_power() const {
  double acc = 0.0;
  for (double v : psd) acc += v;
  return acc * bin_MHz;
}

PsdEstimate psd_estimate(const std::vector<TraceRecord>& traces) {
  if (traces.empty())
    throw std::invalid_argument("psd_estimate: no traces");
  const std::size_t n = traces.front().samples.size();
  const double rate = traces.front().rate_GSps;
  for (const auto& t : traces) {
    t.validate();
    if (t.samples.size() != n || t.rate_GSps != rate)
      throw std::invalid_argument("psd_estimate: mismatched traces");
  }
  PsdEstimate est;
  est.rate_GSps = rate;
  est.bin_MHz = bin_width_MHz(rate, n);
  est.psd.assign(n, 0.0);

  const double rate_MHz = 1e3 * rate;
  FftPlan forward(static_cast<int>(n), FFTW_FORWARD);
  std::vector<Complex> work(n);
  for (const auto& t : traces) {
    work = t.samples;
    forward.run(work);
    for (std::size_t k = 0; k < n; ++k)
      est.psd[k] += std::norm(work[k]) / (static_cast<double>(n) * rate_MHz);
  }
  for (double& v : est.psd) v /= static_cast<double>(traces.size());
  return est;
}

Complex digital_downconvert(const TraceRecord& trace, double f_if_MHz) {
  trace.validate();
  const std::size_t n = trace.samples.size();
  Complex acc(0.0, 0.0);
  // t_n in us so that f_if in MHz gives the phase directly.
  const double dt_us = 1e-3 / trace.rate_GSps;
  for (std::size_t i = 0; i < n; ++i) {
    const double phase = -kTwoPi * f_if_MHz * dt_us * static_cast<double>(i);
    acc += trace.samples[i] * Complex(std::cos(phase), std::sin(phase));
  }
  return acc / static_cast<double>(n);
}

void write_trace(const std::string& path, const TraceRecord& trace,
                 std::uint64_t seed) {
  trace.validate();
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("write_trace: cannot open " + path);
  std::vector<float> buf(2 * trace.samples.size());
  for (std::size_t i = 0; i < trace.samples.size(); ++i) {
    buf[2 * i] = static_cast<float>(trace.samples[i].real());
    buf[2 * i + 1] = static_cast<float>(trace.samples[i].imag());
  }
  os.write(reinterpret_cast<const char*>(buf.data()),
           static_cast<std::streamsize>(buf.size() * sizeof(float)));
  if (!os) throw std::runtime_error("write_trace: write failed for " + path);

  nlohmann::json meta{{"rate_GSps", trace.rate_GSps},
                      {"duration_ns", trace.duration_ns},
                      {"seed", seed}};
  std::ofstream ms(path + ".json");
  if (!ms) throw std::runtime_error("write_trace: cannot open sidecar");
  ms << meta.dump(2) << '\n';
}

TraceRecord read_trace(const std::string& path) {
  std::ifstream ms(path + ".json");
  if (!ms) throw std::runtime_error("read_trace: missing sidecar for " + path);
  nlohmann::json meta = nlohmann::json::parse(ms);
  TraceRecord trace = TraceRecord::allocate(meta.at("rate_GSps").get<double>(),
                                            meta.at("duration_ns").get<double>());
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("read_trace: cannot open " + path);
  std::vector<float> buf(2 * trace.samples.size());
  is.read(reinterpret_cast<char*>(buf.data()),
          static_cast<std::streamsize>(buf.size() * sizeof(float)));
  if (is.gcount() !=
      static_cast<std::streamsize>(buf.size() * sizeof(float)))
    throw std::runtime_error("read_trace: truncated file " + path);
  for (std::size_t i = 0; i < trace.samples.size(); ++i)
    trace.samples[i] = Complex(buf[2 * i], buf[2 * i + 1]);
  return trace;
}

}  // namespace wgqed
