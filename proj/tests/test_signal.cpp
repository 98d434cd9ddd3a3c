#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstdio>
#include <vector>

#include "wgqed/signal.hpp"
#include "wgqed/units.hpp"

using namespace wgqed;

namespace {

SpectrumTrace tone_only(double weight, double drive_GHz = 6.4) {
  SpectrumTrace tr;
  tr.drive_freq_GHz = drive_GHz;
  tr.freq_GHz = {drive_GHz - 1e-3, drive_GHz, drive_GHz + 1e-3};
  tr.psd = {0.0, 0.0, 0.0};
  tr.coherent_weight = weight;
  return tr;
}

SpectrumTrace lorentzian_target(double amp, double width_MHz,
                                double weight, double drive_GHz = 6.4) {
  SpectrumTrace tr;
  tr.drive_freq_GHz = drive_GHz;
  tr.coherent_weight = weight;
  for (int k = 0; k <= 200; ++k) {
    const double off = -10.0 + 0.1 * k;
    tr.freq_GHz.push_back(drive_GHz + GHz_from_MHz(off));
    tr.psd.push_back(amp / (1.0 + off * off / (width_MHz * width_MHz)));
  }
  return tr;
}

}  // namespace

TEST_CASE("trace allocation and validation") {
  TraceRecord tr = TraceRecord::allocate(1.0, 8192.0);
  CHECK(tr.samples.size() == 8192);
  CHECK_NOTHROW(tr.validate());
  tr.samples.pop_back();
  CHECK_THROWS_AS(tr.validate(), std::invalid_argument);
  CHECK_THROWS_AS(TraceRecord::allocate(1.0, 8192.5), std::invalid_argument);
}

TEST_CASE("background correction removes the common chain gain") {
  const auto [tsq, rsq] = background_correct(
      {0.6, 0.0}, {0.0, 0.3}, {0.8, 0.0}, {0.0, 0.6});
  CHECK(tsq == doctest::Approx(0.36).epsilon(1e-12));
  CHECK(rsq == doctest::Approx(0.09).epsilon(1e-12));
  CHECK_THROWS_AS(
      background_correct({1.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}),
      std::invalid_argument);
}

TEST_CASE("intermediate frequency snaps to the window bin") {
  const double bin = 1000.0 / 8192.0;  // 0.1220703125 MHz
  const double snapped = snapped_if_MHz(25.0, 1.0, 8192.0);
  CHECK(snapped == doctest::Approx(205.0 * bin).epsilon(1e-15));
  CHECK(snapped != 25.0);
  CHECK(snapped_if_MHz(100.0 * bin, 1.0, 8192.0) == 100.0 * bin);
}

TEST_CASE("pure tone synthesis is exact under downconversion") {
  const double weight = 0.37;
  const TraceRecord tr = synthesize_trace(tone_only(weight), 7);
  tr.validate();
  const double f_if = snapped_if_MHz(25.0, 1.0, 8192.0);
  const Complex amp = digital_downconvert(tr, f_if);
  CHECK(std::norm(amp) == doctest::Approx(weight).epsilon(1e-9));
  // Off the snapped bin the projection misses the tone.
  CHECK(std::abs(digital_downconvert(tr, 25.0)) < std::abs(amp));
  const double bin = 1000.0 / 8192.0;
  CHECK(std::abs(digital_downconvert(tr, f_if + 3.0 * bin)) < 1e-9);
}

TEST_CASE("downconversion recovers a hand-built bin-aligned tone") {
  const double bin = 1000.0 / 8192.0;
  const double f = 30.0 * bin;
  const Complex a(0.7, 0.2);
  TraceRecord tr = TraceRecord::allocate(1.0, 8192.0);
  for (std::size_t n = 0; n < tr.samples.size(); ++n) {
    const double t_us = 1e-3 * static_cast<double>(n);  // 1 ns steps
    tr.samples[n] = a * std::exp(Complex(0.0, kTwoPi * f * t_us));
  }
  CHECK(std::abs(digital_downconvert(tr, f) - a) < 1e-12);
  CHECK(std::abs(digital_downconvert(tr, 31.0 * bin)) < 1e-12);
}

TEST_CASE("synthesis is deterministic in the seed") {
  const SpectrumTrace target = lorentzian_target(0.2, 2.0, 0.5);
  const TraceRecord a = synthesize_trace(target, 42);
  const TraceRecord b = synthesize_trace(target, 42);
  const TraceRecord c = synthesize_trace(target, 43);
  REQUIRE(a.samples.size() == b.samples.size());
  bool all_equal = true, any_diff = false;
  for (std::size_t k = 0; k < a.samples.size(); ++k) {
    all_equal = all_equal && (a.samples[k] == b.samples[k]);
    any_diff = any_diff || (a.samples[k] != c.samples[k]);
  }
  CHECK(all_equal);
  CHECK(any_diff);
}

TEST_CASE("periodogram satisfies the discrete Parseval identity") {
  const TraceRecord tr = synthesize_trace(lorentzian_target(0.2, 2.0, 0.5), 5);
  const PsdEstimate est = psd_estimate({tr});
  double mean_power = 0.0;
  for (const Complex& s : tr.samples) mean_power += std::norm(s);
  mean_power /= static_cast<double>(tr.samples.size());
  CHECK(est.total_power() == doctest::Approx(mean_power).epsilon(1e-10));
  CHECK(est.bin_MHz == doctest::Approx(1000.0 / 8192.0).epsilon(1e-15));
}

TEST_CASE("bin frequencies wrap to the signed Nyquist band") {
  const TraceRecord tr = synthesize_trace(tone_only(0.1), 1);
  const PsdEstimate est = psd_estimate({tr});
  const double bin = est.bin_MHz;
  CHECK(est.freq_MHz(0) == 0.0);
  CHECK(est.freq_MHz(1) == doctest::Approx(bin).epsilon(1e-12));
  CHECK(est.freq_MHz(4096) == doctest::Approx(-500.0).epsilon(1e-12));
  CHECK(est.freq_MHz(8191) == doctest::Approx(-bin).epsilon(1e-12));
}

TEST_CASE("averaging identical traces leaves the periodogram unchanged") {
  const TraceRecord tr = synthesize_trace(lorentzian_target(0.3, 1.5, 0.2), 9);
  const PsdEstimate one = psd_estimate({tr});
  const PsdEstimate four = psd_estimate({tr, tr, tr, tr});
  REQUIRE(one.psd.size() == four.psd.size());
  for (std::size_t k = 0; k < one.psd.size(); ++k)
    CHECK(four.psd[k] == one.psd[k]);
}

TEST_CASE("ensemble periodogram converges to the target spectrum") {
  const double amp = 0.2, width = 2.0, weight = 0.5;
  const SpectrumTrace target = lorentzian_target(amp, width, weight);
  std::vector<TraceRecord> traces;
  for (std::uint64_t seed = 0; seed < 64; ++seed)
    traces.push_back(synthesize_trace(target, 1000 + seed));
  const PsdEstimate est = psd_estimate(traces);
  const double f_if = snapped_if_MHz(25.0, 1.0, 8192.0);

  // Total power = incoherent integral + coherent tone weight.
  const double expected_total =
      target.incoherent_integral() + weight;
  CHECK(est.total_power() == doctest::Approx(expected_total).epsilon(0.05));

  // The tone occupies a single bin on top of the incoherent floor.
  std::size_t if_bin = 0;
  double best = 1e9;
  for (std::size_t k = 0; k < est.psd.size(); ++k) {
    const double d = std::abs(est.freq_MHz(k) - f_if);
    if (d < best) { best = d; if_bin = k; }
  }
  CHECK(est.psd[if_bin] * est.bin_MHz ==
        doctest::Approx(weight).epsilon(0.15));

  // Band-integrated halves of the Lorentzian, away from the tone bin.
  double lower_half = 0.0, upper_half = 0.0;
  for (std::size_t k = 0; k < est.psd.size(); ++k) {
    const double off = est.freq_MHz(k) - f_if;
    if (k == if_bin) continue;
    if (off >= -8.0 && off < -0.2) lower_half += est.psd[k] * est.bin_MHz;
    if (off > 0.2 && off <= 8.0) upper_half += est.psd[k] * est.bin_MHz;
  }
  const double half_ref = amp * width * std::atan(8.0 / width) -
                          amp * width * std::atan(0.2 / width);
  CHECK(lower_half == doctest::Approx(half_ref).epsilon(0.1));
  CHECK(upper_half == doctest::Approx(half_ref).epsilon(0.1));
}

TEST_CASE("synthesis rejects bands beyond Nyquist") {
  SpectrumTrace far;
  far.drive_freq_GHz = 6.4;
  far.freq_GHz = {6.4 + 0.4799, 6.4 + 0.48, 6.4 + 0.4801};
  far.psd = {0.0, 1.0, 0.0};
  CHECK_THROWS_AS(synthesize_trace(far, 1), std::invalid_argument);
  CHECK_THROWS_AS(synthesize_trace(tone_only(0.1), 1, 1.0, 8192.0, 600.0),
                  std::invalid_argument);
}

TEST_CASE("trace files round-trip through disk") {
  const TraceRecord tr = synthesize_trace(lorentzian_target(0.1, 1.0, 0.3), 77);
  const std::string path = "signal_roundtrip_test.bin";
  write_trace(path, tr, 77);
  const TraceRecord back = read_trace(path);
  CHECK(back.rate_GSps == tr.rate_GSps);
  CHECK(back.duration_ns == tr.duration_ns);
  REQUIRE(back.samples.size() == tr.samples.size());
  double worst = 0.0;
  for (std::size_t k = 0; k < tr.samples.size(); ++k)
    worst = std::max(worst, std::abs(back.samples[k] - tr.samples[k]));
  CHECK(worst < 1e-5);  // float32 storage
  std::remove(path.c_str());
  std::remove((path + ".json").c_str());
  CHECK_THROWS_AS(read_trace("no_such_trace_file.bin"), std::runtime_error);
}
