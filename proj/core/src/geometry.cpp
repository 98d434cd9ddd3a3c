#include "wgqed/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wgqed/units.hpp"

namespace wgqed {

double Geometry::d_over_lambda() const { return d_mm() / lambda_mm; }

double Geometry::d_mm() const {
  if (positions_mm.size() < 2)
    throw std::logic_error("Geometry::d_mm needs at least two qubits");
  return std::abs(positions_mm[1] - positions_mm[0]);
}

Geometry Geometry::pair(double d_over_lambda, double operating_freq_GHz,
                        double lambda_mm) {
  if (lambda_mm <= 0.0) throw std::invalid_argument("Geometry: lambda must be > 0");
  Geometry g;
  g.positions_mm = {0.0, d_over_lambda * lambda_mm};
  g.lambda_mm = lambda_mm;
  g.operating_freq_GHz = operating_freq_GHz;
  return g;
}

double exchange_rate(double gamma1a_MHz, double gamma1b_MHz, double d_over_lambda) {
  if (gamma1a_MHz < 0.0 || gamma1b_MHz < 0.0)
    throw std::invalid_argument("exchange_rate: rates must be >= 0");
  return 0.5 * std::sqrt(gamma1a_MHz * gamma1b_MHz) *
         std::sin(kTwoPi * d_over_lambda);
}

double correlated_decay(double gamma1a_MHz, double gamma1b_MHz, double d_over_lambda) {
  if (gamma1a_MHz < 0.0 || gamma1b_MHz < 0.0)
    throw std::invalid_argument("correlated_decay: rates must be >= 0");
  return std::sqrt(gamma1a_MHz * gamma1b_MHz) * std::cos(kTwoPi * d_over_lambda);
}

EffectiveModel build_effective_model(const std::vector<double>& qubit_freq_GHz,
                                     const Geometry& geometry,
                                     const RateSet& rates,
                                     const DriveSpec& drive) {
  const int n = static_cast<int>(qubit_freq_GHz.size());
  if (n < 1) throw std::invalid_argument("build_effective_model: no qubits");
  if (static_cast<int>(geometry.positions_mm.size()) != n ||
      static_cast<int>(rates.gamma1_MHz.size()) != n ||
      static_cast<int>(rates.gamma_nr_MHz.size()) != n ||
      static_cast<int>(rates.gamma_phi_MHz.size()) != n)
    throw std::invalid_argument("build_effective_model: inconsistent sizes");
  if (geometry.lambda_mm <= 0.0)
    throw std::invalid_argument("build_effective_model: lambda must be > 0");
  if (drive.rabi_MHz < 0.0)
    throw std::invalid_argument("build_effective_model: Rabi rate must be >= 0");
  if (drive.freq_GHz <= 0.0 || geometry.operating_freq_GHz <= 0.0)
    throw std::invalid_argument(
        "build_effective_model: drive and operating frequencies must be > 0");
  for (int j = 0; j < n; ++j)
    if (rates.gamma1_MHz[j] < 0.0 || rates.gamma_nr_MHz[j] < 0.0 ||
        rates.gamma_phi_MHz[j] < 0.0)
      throw std::invalid_argument("build_effective_model: rates must be >= 0");

  EffectiveModel m;
  m.detuning.resize(n);
  m.exchange = Eigen::MatrixXd::Zero(n, n);
  m.decay = Eigen::MatrixXd::Zero(n, n);
  m.radiative.resize(n);
  m.dephasing.resize(n);
  m.drive_amp.resize(n);
  m.drive_phase.resize(n);
  m.drive_freq_GHz = drive.freq_GHz;
  m.omega_ref = angular_from_MHz(drive.rabi_MHz);

  for (int j = 0; j < n; ++j) {
    m.detuning(j) =
        angular_from_MHz(MHz_from_GHz(drive.freq_GHz - qubit_freq_GHz[j]));
    m.radiative(j) = angular_from_MHz(rates.gamma1_MHz[j]);
    m.dephasing(j) = angular_from_MHz(rates.gamma_phi_MHz[j]);
    m.decay(j, j) =
        angular_from_MHz(rates.gamma1_MHz[j] + rates.gamma_nr_MHz[j]);
  }

  // Everything geometric is referred to the wavelength at the drive
  // frequency (lambda f = const along the line). Using the same
  // wavelength in J, gamma_ij, and the drive phases keeps the elastic
  // response unitary at every drive point, not just at the operating
  // frequency; the identity gamma_12^2 + (2J)^2 = gamma_1a gamma_1b and
  // the propagation phases then refer to one common phase 2 pi d /
  // lambda_d.
  const double lambda_d =
      geometry.lambda_mm * geometry.operating_freq_GHz / drive.freq_GHz;

  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double sep =
          std::abs(geometry.positions_mm[i] - geometry.positions_mm[j]) /
          lambda_d;
      m.exchange(i, j) = angular_from_MHz(
          exchange_rate(rates.gamma1_MHz[i], rates.gamma1_MHz[j], sep));
      m.exchange(j, i) = m.exchange(i, j);
      m.decay(i, j) = angular_from_MHz(
          correlated_decay(rates.gamma1_MHz[i], rates.gamma1_MHz[j], sep));
      m.decay(j, i) = m.decay(i, j);
    }

  const double x0 = drive.input == Port::Left
                        ? *std::min_element(geometry.positions_mm.begin(),
                                            geometry.positions_mm.end())
                        : *std::max_element(geometry.positions_mm.begin(),
                                            geometry.positions_mm.end());
  for (int j = 0; j < n; ++j) {
    m.drive_amp(j) = angular_from_MHz(drive.rabi_MHz);
    m.drive_phase(j) = kTwoPi * std::abs(geometry.positions_mm[j] - x0) / lambda_d;
  }

  // Radiative part alone must be a valid correlation matrix.
  Eigen::MatrixXd rad = m.decay;
  for (int j = 0; j < n; ++j) rad(j, j) = m.radiative(j);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(rad);
  const double scale = std::max(1.0, rad.cwiseAbs().maxCoeff());
  if (es.eigenvalues().minCoeff() < -1e-12 * scale)
    throw std::invalid_argument(
        "build_effective_model: radiative decay matrix is not positive "
        "semidefinite");
  return m;
}

}  // namespace wgqed
