#include "wgqed/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "wgqed/lindblad.hpp"
#include "wgqed/parallel.hpp"
#include "wgqed/units.hpp"

namespace wgqed {

Matrix port_operator(const EffectiveModel& model, bool reflection) {
  const int n = model.size();
  const int dim = 1 << n;
  Matrix b = Matrix::Zero(dim, dim);
  const double s = reflection ? 1.0 : -1.0;
  for (int j = 0; j < n; ++j)
    b += std::sqrt(0.5 * model.radiative(j)) *
         std::exp(Complex(0.0, s * model.drive_phase(j))) * lower(j, n);
  return b;
}

ScatterPoint transmission_reflection(const EffectiveModel& model) {
  if (model.omega_ref <= 0.0)
    throw std::invalid_argument(
        "transmission_reflection: needs a nonzero drive");
  const int n = model.size();
  const Liouvillian L = liouvillian(model);
  const DensityOperator rho = steady_state(L);

  Complex fwd = 0.0, bwd = 0.0;
  for (int j = 0; j < n; ++j) {
    const Complex sm = expectation(rho, lower(j, n));
    fwd += model.radiative(j) * sm *
           std::exp(Complex(0.0, -model.drive_phase(j)));
    bwd += model.radiative(j) * sm *
           std::exp(Complex(0.0, +model.drive_phase(j)));
  }
  const Complex i_unit(0.0, 1.0);
  ScatterPoint p;
  p.drive_freq_GHz = model.drive_freq_GHz;
  p.rabi_MHz = MHz_from_angular(model.omega_ref);
  p.t = 1.0 - i_unit / model.omega_ref * fwd;
  p.r = -i_unit / model.omega_ref * bwd;
  if (p.T() + p.R() > 1.0 + 1e-9)
    throw std::runtime_error("transmission_reflection: |t|^2 + |r|^2 = " +
                             std::to_string(p.T() + p.R()) +
                             " violates passivity");
  return p;
}

std::vector<SweepPoint> sweep_elastic(
    const std::function<EffectiveModel(double, double)>& make_model,
    const std::vector<double>& freq_GHz_grid,
    const std::vector<double>& axis_grid, int threads) {
  if (freq_GHz_grid.empty() || axis_grid.empty())
    throw std::invalid_argument("sweep_elastic: empty grid");
  const std::size_t nf = freq_GHz_grid.size();
  const std::size_t na = axis_grid.size();
  std::vector<SweepPoint> out(nf * na);
  parallel_for(out.size(), threads, [&](std::size_t idx) {
    const double f = freq_GHz_grid[idx % nf];
    const double a = axis_grid[idx / nf];
    SweepPoint& sp = out[idx];
    sp.drive_freq_GHz = f;
    sp.axis_value = a;
    try {
      sp.point = transmission_reflection(make_model(f, a));
      sp.ok = true;
    } catch (const std::exception& e) {
      sp.error = e.what();
    }
  });
  return out;
}

std::size_t write_sweep_csv(std::ostream& os, const std::vector<SweepPoint>& rows) {
  os << "drive_freq_GHz,flux_or_voltage,re_t,im_t,re_r,im_r,T,R\n";
  os.precision(12);
  std::size_t written = 0;
  for (const auto& sp : rows) {
    if (!sp.ok) continue;
    os << sp.drive_freq_GHz << ',' << sp.axis_value << ','
       << sp.point.t.real() << ',' << sp.point.t.imag() << ','
       << sp.point.r.real() << ',' << sp.point.r.imag() << ','
       << sp.point.T() << ',' << sp.point.R() << '\n';
    ++written;
  }
  return written;
}

double curve_fwhm(const std::vector<double>& x, const std::vector<double>& y,
                  bool dip) {
  if (x.size() != y.size() || x.size() < 3)
    throw std::invalid_argument("curve_fwhm: need matching grids, >= 3 points");
  const auto [mn_it, mx_it] = std::minmax_element(y.begin(), y.end());
  const std::size_t ext =
      static_cast<std::size_t>((dip ? mn_it : mx_it) - y.begin());
  const double level = 0.5 * (*mn_it + *mx_it);
  // Walk outward from the extremum to the first half-level crossings.
  auto crossed = [&](std::size_t i) {
    return dip ? y[i] >= level : y[i] <= level;
  };
  auto interp = [&](std::size_t a, std::size_t b) {
    const double t = (level - y[a]) / (y[b] - y[a]);
    return x[a] + t * (x[b] - x[a]);
  };
  double left = x.front(), right = x.back();
  for (std::size_t i = ext; i-- > 0;)
    if (crossed(i)) { left = interp(i, i + 1); break; }
  for (std::size_t i = ext + 1; i < y.size(); ++i)
    if (crossed(i)) { right = interp(i - 1, i); break; }
  return right - left;
}

}  // namespace wgqed
