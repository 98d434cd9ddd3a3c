#include <benchmark/benchmark.h>

#include <vector>

#include "wgqed/lindblad.hpp"
#include "wgqed/scattering.hpp"
#include "wgqed/signal.hpp"
#include "wgqed/spectra.hpp"
#include "wgqed/units.hpp"

namespace {

using namespace wgqed;

EffectiveModel pair_model(double rabi_MHz) {
  Geometry geom = Geometry::pair(0.75, 4.8);
  RateSet rates{{13.0, 13.0}, {1.2, 1.2}, {1.8, 1.8}};
  DriveSpec drive;
  drive.freq_GHz = 4.8;
  drive.rabi_MHz = rabi_MHz;
  return build_effective_model({4.8, 4.8}, geom, rates, drive);
}

void bm_liouvillian_build(benchmark::State& state) {
  const EffectiveModel m = pair_model(4.0);
  for (auto _ : state) benchmark::DoNotOptimize(liouvillian(m).matrix());
}
BENCHMARK(bm_liouvillian_build);

void bm_steady_state(benchmark::State& state) {
  const Liouvillian L = liouvillian(pair_model(4.0));
  for (auto _ : state) benchmark::DoNotOptimize(steady_state(L).matrix());
}
BENCHMARK(bm_steady_state);

void bm_elastic_point(benchmark::State& state) {
  const EffectiveModel m = pair_model(0.01);
  for (auto _ : state) benchmark::DoNotOptimize(transmission_reflection(m).t);
}
BENCHMARK(bm_elastic_point);

void bm_evolve(benchmark::State& state) {
  const Liouvillian L = liouvillian(pair_model(4.0));
  const DensityOperator rho = DensityOperator::ground(2);
  for (auto _ : state)
    benchmark::DoNotOptimize(evolve(rho, L, 0.1).matrix());
}
BENCHMARK(bm_evolve);

void bm_spectrum_point(benchmark::State& state) {
  const EffectiveModel m = pair_model(4.0);
  const std::vector<double> grid = {m.drive_freq_GHz + GHz_from_MHz(7.5)};
  for (auto _ : state)
    benchmark::DoNotOptimize(emission_spectrum(m, Detection::Transmission, grid).psd);
}
BENCHMARK(bm_spectrum_point);

void bm_synthesize_trace(benchmark::State& state) {
  const EffectiveModel m = pair_model(4.0);
  const SpectrumTrace tr = emission_spectrum(
      m, Detection::Transmission,
      [&] {
        std::vector<double> g;
        for (int k = 0; k <= 200; ++k)
          g.push_back(m.drive_freq_GHz + GHz_from_MHz(-25.0 + 0.25 * k));
        return g;
      }());
  std::uint64_t seed = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(synthesize_trace(tr, seed++).samples);
}
BENCHMARK(bm_synthesize_trace);

void bm_psd_estimate(benchmark::State& state) {
  const EffectiveModel m = pair_model(4.0);
  SpectrumTrace tr;
  tr.drive_freq_GHz = 4.8;
  tr.coherent_weight = 0.2;
  for (int k = 0; k <= 200; ++k) {
    tr.freq_GHz.push_back(4.8 + GHz_from_MHz(-10.0 + 0.1 * k));
    tr.psd.push_back(0.1);
  }
  std::vector<TraceRecord> traces;
  for (std::uint64_t s = 0; s < 16; ++s)
    traces.push_back(synthesize_trace(tr, s));
  for (auto _ : state) benchmark::DoNotOptimize(psd_estimate(traces).psd);
}
BENCHMARK(bm_psd_estimate);

}  // namespace

BENCHMARK_MAIN();
