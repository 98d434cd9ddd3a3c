#pragma once

#include <Eigen/Dense>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace wgqed {

// Maps a nonlinear parameter vector theta to model values on the data
// grid. theta layout is defined by FitConfig::param_names.
using ForwardModel = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

struct FitConfig {
  std::vector<std::string> param_names;  // e.g. {"gamma_nr_0", "gamma_phi_0"}
  Eigen::VectorXd initial;               // same length as param_names
  Eigen::VectorXd lower;                 // bounds enforced by projection
  Eigen::VectorXd upper;
  bool fit_scale = true;   // linear nuisance: data ~ scale * model + offset
  bool fit_offset = true;
  int max_iterations = 60;
  double tolerance = 1e-10;  // relative cost decrease convergence

  static FitConfig rates(const std::vector<std::string>& names,
                         const Eigen::VectorXd& initial);
};

struct FitResult {
  std::vector<std::string> param_names;
  Eigen::VectorXd params;
  double scale = 1.0;
  double offset = 0.0;
  double residual_norm = 0.0;
  double initial_residual_norm = 0.0;
  Eigen::MatrixXd covariance;  // Gauss-Newton estimate at the solution
  int iterations = 0;
  bool converged = false;
};

struct MaxIterations : std::runtime_error {
  explicit MaxIterations(const FitResult& best);
  FitResult best;
};

// Thrown when a parameter leaves the residual exactly flat over the
// difference probe (a dead column) or the whole Jacobian vanishes.
struct SingularJacobian : std::runtime_error {
  SingularJacobian(std::string diagnostics, std::vector<double> column_norms);
  std::vector<double> column_norms;  // per-parameter sensitivity
};

// Separable least squares min over theta (and scale/offset, solved
// exactly per iteration) of |data - scale * model(theta) - offset|^2.
// Gauss-Newton on the projected residual with forward-difference
// Jacobian, Levenberg damping, and projection onto the bounds.
FitResult fit_least_squares(const Eigen::VectorXd& data,
                            const ForwardModel& model, const FitConfig& config);

}  // namespace wgqed
