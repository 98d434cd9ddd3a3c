#pragma once

#include <Eigen/Dense>
#include <vector>

namespace wgqed {

// Qubit placement along the open transmission line. Wavelength refers to
// the photon at the operating frequency; drive phases rescale it to the
// drive frequency assuming dispersionless propagation (lambda * f const).
struct Geometry {
  std::vector<double> positions_mm;  // coordinate along the line, ascending
  double lambda_mm = 0.0;            // wavelength at operating_freq
  double operating_freq_GHz = 0.0;

  // Two-qubit separation in units of lambda; requires >= 2 qubits.
  double d_over_lambda() const;
  double d_mm() const;

  // positions {0, d_over_lambda * lambda} with lambda fixed by convention
  // to 20 mm unless given: only ratios x/lambda enter the physics.
  static Geometry pair(double d_over_lambda, double operating_freq_GHz,
                       double lambda_mm = 20.0);
};

struct RateSet {
  std::vector<double> gamma1_MHz;     // radiative, one per qubit
  std::vector<double> gamma_nr_MHz;   // nonradiative decay
  std::vector<double> gamma_phi_MHz;  // pure dephasing
};

enum class Port { Left, Right };

struct DriveSpec {
  double freq_GHz = 0.0;
  double rabi_MHz = 0.0;  // Rabi rate at the reference (first-hit) qubit
  Port input = Port::Left;
};

// All frequencies and rates below are angular (rad/us). Assembled in the
// frame rotating at the drive:
//   H = sum_j -detuning(j) n_j
//     + sum_{i<j} exchange(i,j) (sp_i sm_j + sm_i sp_j)
//     + sum_j drive_amp(j)/2 (e^{+i phase} sp_j + e^{-i phase} sm_j)
// and dissipators
//   sum_{ij} decay(i,j) (sm_i rho sp_j - 1/2 {sp_j sm_i, rho})
//   + sum_j dephasing(j)/2 D[sigma_z_j] rho.
struct EffectiveModel {
  Eigen::VectorXd detuning;     // omega_d - omega_j
  Eigen::MatrixXd exchange;     // J_ij, symmetric, zero diagonal
  Eigen::MatrixXd decay;        // gamma_ij; diagonal = gamma1 + gamma_nr
  Eigen::VectorXd radiative;    // gamma1_j alone, for ports and spectra
  Eigen::VectorXd dephasing;    // gamma_phi_j
  Eigen::VectorXd drive_amp;    // Omega_j
  Eigen::VectorXd drive_phase;  // phi_j = 2 pi x_j / lambda_d from input port
  double drive_freq_GHz = 0.0;
  double omega_ref = 0.0;       // reference Rabi rate for t/r normalization

  int size() const { return static_cast<int>(detuning.size()); }
};

// J = (sqrt(g1a g1b) / 2) sin(2 pi d/lambda); inputs and output in MHz
// (the 2 pi factors cancel, so the same formula holds for angular rates).
double exchange_rate(double gamma1a_MHz, double gamma1b_MHz, double d_over_lambda);

// gamma_12 = sqrt(g1a g1b) cos(2 pi d/lambda), same unit convention.
double correlated_decay(double gamma1a_MHz, double gamma1b_MHz, double d_over_lambda);

// Assembles the rotating-frame model for qubits at qubit_freq_GHz. Checks
// that the radiative part of the decay matrix is positive semidefinite.
EffectiveModel build_effective_model(const std::vector<double>& qubit_freq_GHz,
                                     const Geometry& geometry,
                                     const RateSet& rates,
                                     const DriveSpec& drive);

}  // namespace wgqed
