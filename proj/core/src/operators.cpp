#include "wgqed/operators.hpp"

#include <stdexcept>
#include <unsupported/Eigen/KroneckerProduct>

namespace wgqed {

Matrix sigma_minus() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = 1.0;
  return m;
}

Matrix sigma_plus() { return sigma_minus().adjoint(); }

Matrix sigma_z() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = -1.0;
  m(1, 1) = 1.0;
  return m;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

Matrix embed(const Matrix& op, int qubit, int n_qubits) {
  if (qubit < 0 || qubit >= n_qubits)
    throw std::invalid_argument("embed: qubit index out of range");
  Matrix out = Matrix::Identity(1, 1);
  for (int k = 0; k < n_qubits; ++k)
    out = kron(out, k == qubit ? op : Matrix::Identity(2, 2));
  return out;
}

Matrix lower(int qubit, int n_qubits) { return embed(sigma_minus(), qubit, n_qubits); }
Matrix raise(int qubit, int n_qubits) { return embed(sigma_plus(), qubit, n_qubits); }

Matrix number(int qubit, int n_qubits) {
  return embed(sigma_plus() * sigma_minus(), qubit, n_qubits);
}

Matrix pauli_z(int qubit, int n_qubits) { return embed(sigma_z(), qubit, n_qubits); }

Vector vec(const Matrix& m) {
  return Eigen::Map<const Vector>(m.data(), m.size());
}

Matrix unvec(const Vector& v, int dim) {
  if (v.size() != Eigen::Index(dim) * dim)
    throw std::invalid_argument("unvec: size mismatch");
  return Eigen::Map<const Matrix>(v.data(), dim, dim);
}

Eigen::RowVectorXcd trace_row(int dim) {
  Eigen::RowVectorXcd tr = Eigen::RowVectorXcd::Zero(Eigen::Index(dim) * dim);
  for (int k = 0; k < dim; ++k) tr(Eigen::Index(k) * dim + k) = 1.0;
  return tr;
}

}  // namespace wgqed
