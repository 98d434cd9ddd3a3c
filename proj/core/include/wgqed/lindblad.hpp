#pragma once

#include <stdexcept>
#include <vector>

#include "wgqed/geometry.hpp"
#include "wgqed/operators.hpp"

namespace wgqed {

// State over the 2^N Hilbert space. The constructor enforces hermiticity
// (defect <= 1e-10), unit trace (+-1e-10), and positivity (eigenvalues
// >= -1e-9); anything built through the public API stays physical.
class DensityOperator {
 public:
  explicit DensityOperator(Matrix rho);

  static DensityOperator ground(int n_qubits);
  static DensityOperator pure(const Vector& psi);

  const Matrix& matrix() const { return rho_; }
  int dim() const { return static_cast<int>(rho_.rows()); }

  double hermiticity_defect() const;
  double trace_defect() const;
  double min_eigenvalue() const;

 private:
  Matrix rho_;
};

Complex expectation(const DensityOperator& rho, const Matrix& op);

// Generator of the master equation in column-stacked vectorization:
// vec(rho_dot) = L vec(rho). Dimension 4^N x 4^N.
class Liouvillian {
 public:
  Liouvillian(Matrix mat, int n_qubits);

  const Matrix& matrix() const { return mat_; }
  int n_qubits() const { return n_qubits_; }
  int dim() const { return 1 << n_qubits_; }  // Hilbert space dimension

  // max |tr . L| column-wise: trace preservation defect.
  double trace_defect() const;

 private:
  Matrix mat_;
  int n_qubits_;
};

// Builds L = -i (I kron H - H^T kron I)
//          + sum_ij gamma_ij [ (sp_j)^T kron sm_i
//                              - 1/2 I kron (sp_j sm_i)
//                              - 1/2 (sp_j sm_i)^T kron I ]
//          + sum_j gamma_phi_j / 2 [ sz_j^T kron sz_j - I ]
// from the rotating-frame model. H is the EffectiveModel Hamiltonian.
Liouvillian liouvillian(const EffectiveModel& model);

Matrix hamiltonian(const EffectiveModel& model);

// rho(t) = unvec(exp(L t) vec(rho0)). Output is validated; a positivity
// violation beyond tolerance surfaces as std::invalid_argument from the
// DensityOperator constructor.
DensityOperator evolve(const DensityOperator& rho0, const Liouvillian& L,
                       double t_us);

// Thrown when the Liouvillian kernel is more than one-dimensional (e.g.
// ideal d = lambda geometry, where the subradiant state is dark): there is
// no unique steady state to return. null_basis spans the kernel.
struct DegenerateSteadyState : std::runtime_error {
  explicit DegenerateSteadyState(std::vector<Matrix> basis);
  std::vector<Matrix> null_basis;
};

// Unique solution of L vec(rho) = 0 with tr rho = 1, via a trace-bordered
// linear solve with an SVD null-space fallback. Verifies the residual
// |L vec(rho)| <= 1e-9 |L|_F.
DensityOperator steady_state(const Liouvillian& L);

}  // namespace wgqed
