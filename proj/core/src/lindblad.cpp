#include "wgqed/lindblad.hpp"

#include <cmath>
#include <string>
#include <unsupported/Eigen/MatrixFunctions>

namespace wgqed {

namespace {

int qubit_count_for_dim(Eigen::Index dim) {
  int n = 0;
  while ((Eigen::Index(1) << n) < dim) ++n;
  if ((Eigen::Index(1) << n) != dim)
    throw std::invalid_argument("dimension is not a power of two");
  return n;
}

}  // namespace

DensityOperator::DensityOperator(Matrix rho) : rho_(std::move(rho)) {
  if (rho_.rows() != rho_.cols() || rho_.rows() < 2)
    throw std::invalid_argument("DensityOperator: matrix must be square");
  qubit_count_for_dim(rho_.rows());
  if (hermiticity_defect() > 1e-10)
    throw std::invalid_argument("DensityOperator: not Hermitian");
  if (trace_defect() > 1e-10)
    throw std::invalid_argument("DensityOperator: trace differs from 1");
  if (min_eigenvalue() < -1e-9)
    throw std::invalid_argument("DensityOperator: negative eigenvalue beyond "
                                "tolerance");
}

DensityOperator DensityOperator::ground(int n_qubits) {
  const int dim = 1 << n_qubits;
  Matrix rho = Matrix::Zero(dim, dim);
  rho(0, 0) = 1.0;
  return DensityOperator(std::move(rho));
}

DensityOperator DensityOperator::pure(const Vector& psi) {
  const double n2 = psi.squaredNorm();
  if (n2 <= 0.0) throw std::invalid_argument("pure: zero state vector");
  Matrix rho = psi * psi.adjoint() / n2;
  return DensityOperator(std::move(rho));
}

double DensityOperator::hermiticity_defect() const {
  return (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
}

double DensityOperator::trace_defect() const {
  return std::abs(rho_.trace() - Complex(1.0));
}

double DensityOperator::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (rho_ + rho_.adjoint()));
  return es.eigenvalues().minCoeff();
}

Complex expectation(const DensityOperator& rho, const Matrix& op) {
  return (op * rho.matrix()).trace();
}

Liouvillian::Liouvillian(Matrix mat, int n_qubits)
    : mat_(std::move(mat)), n_qubits_(n_qubits) {
  const Eigen::Index d2 = Eigen::Index(1) << (2 * n_qubits);
  if (mat_.rows() != d2 || mat_.cols() != d2)
    throw std::invalid_argument("Liouvillian: dimension mismatch");
}

double Liouvillian::trace_defect() const {
  return (trace_row(dim()) * mat_).cwiseAbs().maxCoeff();
}

Matrix hamiltonian(const EffectiveModel& model) {
  const int n = model.size();
  const int dim = 1 << n;
  Matrix H = Matrix::Zero(dim, dim);
  for (int j = 0; j < n; ++j) {
    H -= model.detuning(j) * number(j, n);
    const Complex amp =
        0.5 * model.drive_amp(j) *
        std::exp(Complex(0.0, model.drive_phase(j)));
    H += amp * raise(j, n) + std::conj(amp) * lower(j, n);
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (model.exchange(i, j) != 0.0)
        H += model.exchange(i, j) *
             (raise(i, n) * lower(j, n) + lower(i, n) * raise(j, n));
  return H;
}

Liouvillian liouvillian(const EffectiveModel& model) {
  const int n = model.size();
  const int dim = 1 << n;
  const Eigen::Index d2 = Eigen::Index(dim) * dim;
  const Matrix id = Matrix::Identity(dim, dim);

  const Matrix H = hamiltonian(model);
  Matrix L = Complex(0.0, -1.0) *
             (kron(id, H) - kron(H.transpose(), id));

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double g = model.decay(i, j);
      if (g == 0.0) continue;
      const Matrix sm_i = lower(i, n);
      const Matrix pj_i = raise(j, n) * sm_i;  // sp_j sm_i
      L += g * (kron(raise(j, n).transpose(), sm_i) -
                0.5 * kron(id, pj_i) -
                0.5 * kron(pj_i.transpose(), id));
    }

  for (int j = 0; j < n; ++j) {
    const double gp = model.dephasing(j);
    if (gp == 0.0) continue;
    const Matrix sz = pauli_z(j, n);
    L += 0.5 * gp *
         (kron(sz.transpose(), sz) - Matrix::Identity(d2, d2));
  }
  return Liouvillian(std::move(L), n);
}

DensityOperator evolve(const DensityOperator& rho0, const Liouvillian& L,
                       double t_us) {
  if (t_us < 0.0) throw std::invalid_argument("evolve: t must be >= 0");
  if (rho0.dim() != L.dim())
    throw std::invalid_argument("evolve: dimension mismatch");
  const Matrix prop = (L.matrix() * t_us).exp();
  Vector v = prop * vec(rho0.matrix());
  Matrix rho = unvec(v, L.dim());
  // Clean the roundoff-level anti-Hermitian part before validation.
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DensityOperator(std::move(rho));
}

DegenerateSteadyState::DegenerateSteadyState(std::vector<Matrix> basis)
    : std::runtime_error("steady state is not unique: Liouvillian kernel has "
                         "dimension " + std::to_string(basis.size())),
      null_basis(std::move(basis)) {}

DensityOperator steady_state(const Liouvillian& L) {
  const int dim = L.dim();
  const Eigen::Index d2 = Eigen::Index(dim) * dim;
  const double l_norm = L.matrix().norm();

  // Bordered system: replace the first row with the trace functional and
  // ask for trace one. For a unique kernel direction this is regular.
  Matrix M = L.matrix();
  M.row(0) = trace_row(dim);
  Vector rhs = Vector::Zero(d2);
  rhs(0) = 1.0;

  Eigen::FullPivLU<Matrix> lu(M);
  lu.setThreshold(1e-10);
  if (lu.rank() == d2) {
    Vector v = lu.solve(rhs);
    if ((L.matrix() * v).norm() <= 1e-9 * std::max(l_norm, 1.0)) {
      Matrix rho = unvec(v, dim);
      rho = 0.5 * (rho + rho.adjoint()).eval();
      return DensityOperator(std::move(rho));
    }
  }

  // Singular or ill-conditioned bordered system: inspect the kernel of L
  // itself. One null direction means a unique state that the bordered
  // solve merely failed to condition; more means genuine degeneracy.
  Eigen::JacobiSVD<Matrix> svd(L.matrix(), Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double tol = 1e-10 * std::max(sv(0), 1.0);
  std::vector<Matrix> basis;
  for (Eigen::Index k = 0; k < sv.size(); ++k)
    if (sv(k) <= tol) {
      Matrix b = unvec(svd.matrixV().col(k), dim);
      basis.push_back(std::move(b));
    }
  if (basis.empty())
    throw std::runtime_error("steady_state: no null direction found");
  if (basis.size() > 1) throw DegenerateSteadyState(std::move(basis));

  Matrix rho = basis.front();
  const Complex tr = rho.trace();
  if (std::abs(tr) < 1e-12)
    throw std::runtime_error("steady_state: null direction is traceless");
  rho /= tr;
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DensityOperator(std::move(rho));
}

}  // namespace wgqed
