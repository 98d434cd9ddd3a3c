#include "wgqed/fitting.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace wgqed {

namespace {

struct LinearSolution {
  double scale = 1.0;
  double offset = 0.0;
  Eigen::VectorXd residual;
};

// Best scale/offset for data ~ scale * m + offset in closed form; fixed
// at (1, 0) when not fitted.
LinearSolution project_linear(const Eigen::VectorXd& data,
                              const Eigen::VectorXd& m, bool fit_scale,
                              bool fit_offset) {
  const double n = static_cast<double>(data.size());
  LinearSolution out;
  if (fit_scale && fit_offset) {
    const double sm = m.sum(), sd = data.sum();
    const double smm = m.squaredNorm(), smd = m.dot(data);
    const double det = n * smm - sm * sm;
    if (std::abs(det) > 1e-300 * std::max(1.0, n * smm)) {
      out.scale = (n * smd - sm * sd) / det;
      out.offset = (sd - out.scale * sm) / n;
    } else {  // flat model: offset alone explains it
      out.scale = 0.0;
      out.offset = sd / n;
    }
  } else if (fit_scale) {
    const double smm = m.squaredNorm();
    out.scale = smm > 0.0 ? m.dot(data) / smm : 0.0;
  } else if (fit_offset) {
    out.offset = (data - m).sum() / n;
  }
  out.residual = data - out.scale * m -
                 Eigen::VectorXd::Constant(data.size(), out.offset);
  return out;
}

Eigen::VectorXd clamp(const Eigen::VectorXd& theta, const FitConfig& c) {
  return theta.cwiseMax(c.lower).cwiseMin(c.upper);
}

}  // namespace

FitConfig FitConfig::rates(const std::vector<std::string>& names,
                           const Eigen::VectorXd& initial) {
  FitConfig c;
  c.param_names = names;
  c.initial = initial;
  c.lower = Eigen::VectorXd::Zero(initial.size());
  c.upper = Eigen::VectorXd::Constant(initial.size(),
                                      std::numeric_limits<double>::infinity());
  return c;
}

MaxIterations::MaxIterations(const FitResult& b)
    : std::runtime_error("fit did not converge in " +
                         std::to_string(b.iterations) + " iterations"),
      best(b) {}

SingularJacobian::SingularJacobian(std::string diagnostics,
                                   std::vector<double> norms)
    : std::runtime_error(std::move(diagnostics)),
      column_norms(std::move(norms)) {}

FitResult fit_least_squares(const Eigen::VectorXd& data,
                            const ForwardModel& model,
                            const FitConfig& config) {
  const Eigen::Index p = config.initial.size();
  if (static_cast<Eigen::Index>(config.param_names.size()) != p ||
      config.lower.size() != p || config.upper.size() != p)
    throw std::invalid_argument("fit_least_squares: inconsistent config sizes");
  if (((config.initial - clamp(config.initial, config)).array() != 0.0).any())
    throw std::invalid_argument("fit_least_squares: initial guess violates "
                                "bounds");

  auto evaluate = [&](const Eigen::VectorXd& theta) {
    Eigen::VectorXd m = model(theta);
    if (m.size() != data.size())
      throw std::invalid_argument("fit_least_squares: model/data size "
                                  "mismatch");
    return project_linear(data, m, config.fit_scale, config.fit_offset);
  };

  Eigen::VectorXd theta = config.initial;
  LinearSolution cur = evaluate(theta);
  double cost = cur.residual.squaredNorm();

  FitResult result;
  result.param_names = config.param_names;
  result.initial_residual_norm = std::sqrt(cost);
  result.covariance = Eigen::MatrixXd::Zero(p, p);

  double lambda = 1e-3;
  Eigen::MatrixXd jac(data.size(), p);
  bool done = p == 0;

  int it = 0;
  for (; it < config.max_iterations && !done; ++it) {
    // Forward-difference Jacobian of the projected residual.
    for (Eigen::Index j = 0; j < p; ++j) {
      const double h = 1e-6 * std::max(1.0, std::abs(theta(j)));
      Eigen::VectorXd th = theta;
      th(j) = std::min(th(j) + h, config.upper(j));
      const double used = th(j) - theta(j);
      if (used == 0.0) {
        th(j) = theta(j) - h;
        jac.col(j) = (evaluate(clamp(th, config)).residual - cur.residual) /
                     (th(j) - theta(j));
      } else {
        jac.col(j) = (evaluate(th).residual - cur.residual) / used;
      }
    }

    const Eigen::MatrixXd jtj = jac.transpose() * jac;
    const Eigen::VectorXd jtr = jac.transpose() * cur.residual;
    const double jtj_scale = jtj.diagonal().maxCoeff();
    // A parameter the model never reads has an exactly flat residual over
    // the difference probe; damping would hide it and report a meaningless
    // covariance, so it is surfaced immediately instead.
    bool dead_column = false;
    for (Eigen::Index j = 0; j < p; ++j)
      dead_column = dead_column || jac.col(j).norm() == 0.0;
    if (!(jtj_scale > 0.0) || !std::isfinite(jtj_scale) || dead_column) {
      std::vector<double> norms(static_cast<std::size_t>(p));
      std::ostringstream msg;
      msg << "fit_least_squares: singular Jacobian; parameter sensitivities:";
      for (Eigen::Index j = 0; j < p; ++j) {
        norms[static_cast<std::size_t>(j)] = jac.col(j).norm();
        msg << ' ' << config.param_names[static_cast<std::size_t>(j)] << '='
            << jac.col(j).norm();
      }
      throw SingularJacobian(msg.str(), std::move(norms));
    }

    bool accepted = false;
    for (int attempt = 0; attempt < 16; ++attempt) {
      Eigen::MatrixXd damped = jtj;
      damped.diagonal().array() += lambda * jtj_scale;
      const Eigen::VectorXd step = damped.ldlt().solve(-jtr);
      const Eigen::VectorXd trial = clamp(theta + step, config);
      LinearSolution trial_sol = evaluate(trial);
      const double trial_cost = trial_sol.residual.squaredNorm();
      if (trial_cost <= cost) {
        const double rel_drop = (cost - trial_cost) / std::max(cost, 1e-300);
        theta = trial;
        cur = std::move(trial_sol);
        cost = trial_cost;
        lambda = std::max(lambda / 4.0, 1e-12);
        accepted = true;
        if (rel_drop < config.tolerance) done = true;
        break;
      }
      lambda *= 8.0;
    }
    if (!accepted) done = true;  // damping exhausted: local minimum
  }

  result.params = theta;
  result.scale = cur.scale;
  result.offset = cur.offset;
  result.residual_norm = std::sqrt(cost);
  result.iterations = it;
  result.converged = done;

  // Covariance estimate (J^T J)^{-1} sigma^2, sigma^2 from the residual.
  if (p > 0) {
    for (Eigen::Index j = 0; j < p; ++j) {
      const double h = 1e-6 * std::max(1.0, std::abs(theta(j)));
      Eigen::VectorXd th = theta;
      th(j) += h;
      jac.col(j) = (evaluate(clamp(th, config)).residual - cur.residual) / h;
    }
    const Eigen::MatrixXd jtj = jac.transpose() * jac;
    const Eigen::Index dof =
        std::max<Eigen::Index>(data.size() - p - (config.fit_scale ? 1 : 0) -
                                   (config.fit_offset ? 1 : 0),
                               1);
    const double sigma2 = cost / static_cast<double>(dof);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(jtj);
    if (lu.isInvertible()) result.covariance = lu.inverse() * sigma2;
  }

  if (!result.converged) throw MaxIterations(result);
  return result;
}

}  // namespace wgqed
