#include "wgqed/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "wgqed/lindblad.hpp"
#include "wgqed/parallel.hpp"
#include "wgqed/scattering.hpp"
#include "wgqed/units.hpp"

namespace wgqed {

double SpectrumTrace::incoherent_integral() const {
  double acc = 0.0;
  for (std::size_t i = 1; i < freq_GHz.size(); ++i)
    acc += 0.5 * (psd[i] + psd[i - 1]) *
           MHz_from_GHz(freq_GHz[i] - freq_GHz[i - 1]);
  return acc;
}

SpectrumTrace emission_spectrum(const EffectiveModel& model, Detection port,
                                const std::vector<double>& freq_GHz_grid,
                                int threads) {
  if (freq_GHz_grid.empty())
    throw std::invalid_argument("emission_spectrum: empty grid");
  if (!std::is_sorted(freq_GHz_grid.begin(), freq_GHz_grid.end()))
    throw std::invalid_argument("emission_spectrum: grid must be ascending");

  const Liouvillian L = liouvillian(model);
  const DensityOperator rho = steady_state(L);
  const int dim = L.dim();
  const Eigen::Index d2 = Eigen::Index(dim) * dim;

  const Matrix b = port_operator(model, port == Detection::Reflection);
  const Complex b_mean = expectation(rho, b);
  const Matrix delta_b = b - b_mean * Matrix::Identity(dim, dim);

  // Regression seed vec(delta_b rho_ss) is trace-free because
  // tr(delta_b rho) = <b> - <b> = 0; left.dot(.) below is Tr[delta_b^dag .].
  const Vector seed = vec(delta_b * rho.matrix());
  const Vector left = vec(delta_b);

  // Deflation: L + vec(rho_ss) tr is invertible whenever the kernel of L
  // is one-dimensional, and for trace-free right-hand sides the solution
  // coincides with the pseudo-resolvent of L (its trace is forced to 0).
  const Matrix deflation =
      vec(rho.matrix()) * trace_row(dim);

  SpectrumTrace out;
  out.freq_GHz = freq_GHz_grid;
  out.psd.assign(freq_GHz_grid.size(), 0.0);
  out.drive_freq_GHz = model.drive_freq_GHz;
  out.port = port;
  out.coherent_weight = std::norm(b_mean) / kTwoPi;

  parallel_for(freq_GHz_grid.size(), threads, [&](std::size_t k) {
    // One-sided transform with kernel e^{-i nu tau}:
    //   S(nu) = (1/pi) Re Tr[delta_b^dag (i nu I - L)^{-1} (delta_b rho)]
    // so detected offsets land on the physical side of the drive. The
    // residual check guards against a non-convergent solve.
    const double nu = angular_from_MHz(
        MHz_from_GHz(freq_GHz_grid[k] - model.drive_freq_GHz));
    const Matrix M = Complex(0.0, nu) * Matrix::Identity(d2, d2) -
                     L.matrix() + deflation;
    Eigen::PartialPivLU<Matrix> lu(M);
    const Vector y = lu.solve(seed);
    if (!((M * y - seed).norm() <= 1e-8 * std::max(seed.norm(), 1e-300)))
      throw std::runtime_error("emission_spectrum: resolvent solve did not "
                               "converge");
    out.psd[k] = (left.dot(y)).real() / (0.5 * kTwoPi);
  });

  const double peak = *std::max_element(out.psd.begin(), out.psd.end());
  for (double& v : out.psd) {
    if (v < -1e-9 * std::max(1.0, peak))
      throw std::runtime_error("emission_spectrum: negative PSD beyond floor");
    if (v < 0.0) v = 0.0;
  }
  return out;
}

double incoherent_rate(const EffectiveModel& model, Detection port) {
  const Liouvillian L = liouvillian(model);
  const DensityOperator rho = steady_state(L);
  const Matrix b = port_operator(model, port == Detection::Reflection);
  const Complex b_mean = expectation(rho, b);
  const double total = expectation(rho, b.adjoint() * b).real();
  return (total - std::norm(b_mean)) / kTwoPi;
}

SpectrumTrace strip_coherent(SpectrumTrace trace) {
  trace.coherent_weight = 0.0;
  return trace;
}

std::vector<double> default_spectrum_grid(const EffectiveModel& model) {
  const double f_d = model.drive_freq_GHz;
  const double omega = MHz_from_angular(model.omega_ref);
  double width = 0.0;  // MHz, broadest relevant linewidth
  for (int j = 0; j < model.size(); ++j)
    width += MHz_from_angular(model.decay(j, j) + 2.0 * model.dephasing(j));
  width = std::max(width, 1.0);

  const double core = omega + 8.0 * width;
  const double far = 1000.0 * width;
  std::set<double> offsets;  // MHz around the drive
  const int n_core = 1500;
  for (int i = 0; i <= n_core; ++i)
    offsets.insert(-core + 2.0 * core * i / n_core);
  const int n_tail = 120;
  for (int i = 0; i <= n_tail; ++i) {
    const double v = core * std::pow(far / core, double(i) / n_tail);
    offsets.insert(v);
    offsets.insert(-v);
  }
  std::vector<double> grid;
  grid.reserve(offsets.size());
  for (double off : offsets) grid.push_back(f_d + GHz_from_MHz(off));
  return grid;
}

}  // namespace wgqed
