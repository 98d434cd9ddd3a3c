#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "wgqed/geometry.hpp"
#include "wgqed/operators.hpp"

namespace wgqed {

// Coherent elastic response at one drive point.
struct ScatterPoint {
  double drive_freq_GHz = 0.0;
  double rabi_MHz = 0.0;
  Complex t{1.0, 0.0};
  Complex r{0.0, 0.0};

  double T() const { return std::norm(t); }
  double R() const { return std::norm(r); }
};

// Port emission operator b = sum_j sqrt(gamma1_j / 2) e^{s i phi_j} sm_j
// with s = -1 toward the transmission port (forward) and s = +1 back
// toward the input (reflection). Shared with the spectra module.
Matrix port_operator(const EffectiveModel& model, bool reflection);

// Steady-state input-output coefficients:
//   t = 1 - (i / Omega_ref) sum_j gamma1_j <sm_j> e^{-i phi_j}
//   r =   - (i / Omega_ref) sum_j gamma1_j <sm_j> e^{+i phi_j}
// The overall prefactor and signs are pinned by three limits checked in
// the tests: the single-qubit weak-drive transmission minimum
// 1 - gamma1/(gamma1 + gamma_nr + 2 gamma_phi), saturation t -> 1 at
// strong drive, and |r| -> 1 for the resonant qubit pair at d = lambda.
// Throws on |t|^2 + |r|^2 > 1 + 1e-9; propagates DegenerateSteadyState.
ScatterPoint transmission_reflection(const EffectiveModel& model);

struct SweepPoint {
  double drive_freq_GHz = 0.0;
  double axis_value = 0.0;  // tuning-axis coordinate (voltage/flux), or 0
  ScatterPoint point;
  bool ok = false;
  std::string error;
};

// Evaluates transmission_reflection over the outer product of the
// frequency and axis grids. make_model(f_GHz, axis) supplies the model at
// each point; failures are recorded per point and the sweep continues.
std::vector<SweepPoint> sweep_elastic(
    const std::function<EffectiveModel(double, double)>& make_model,
    const std::vector<double>& freq_GHz_grid,
    const std::vector<double>& axis_grid, int threads = 1);

// Columns: drive_freq_GHz, flux_or_voltage, re_t, im_t, re_r, im_r, T, R.
// Failed points are skipped; returns the number of rows written.
std::size_t write_sweep_csv(std::ostream& os, const std::vector<SweepPoint>& rows);

// Full width at half maximum of y(x) around its global extremum; `dip`
// selects a minimum. The half level is the mean of the observed extremes,
// with linear interpolation between samples. x must be ascending.
double curve_fwhm(const std::vector<double>& x, const std::vector<double>& y,
                  bool dip = false);

}  // namespace wgqed
