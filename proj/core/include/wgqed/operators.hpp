#pragma once

#include <Eigen/Dense>
#include <complex>

// Multi-qubit operator algebra on the 2^N product space.
//
// Basis conventions, fixed once here and relied on everywhere else:
//  * single qubit: index 0 = |g>, index 1 = |e>,
//    sigma_minus = |g><e| has its single 1 at (row 0, col 1),
//    sigma_z = diag(-1, +1) so <e|sigma_z|e> = +1;
//  * qubit 0 is the leftmost Kronecker factor, so for two qubits the
//    basis order is |gg>, |ge>, |eg>, |ee> with qubit 1 varying fastest.

namespace wgqed {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

Matrix sigma_minus();
Matrix sigma_plus();
Matrix sigma_z();

Matrix kron(const Matrix& a, const Matrix& b);

// op acting on `qubit` (0-based), identity on the other n_qubits - 1.
Matrix embed(const Matrix& op, int qubit, int n_qubits);

Matrix lower(int qubit, int n_qubits);   // sigma_minus on one qubit
Matrix raise(int qubit, int n_qubits);   // sigma_plus on one qubit
Matrix number(int qubit, int n_qubits);  // sigma_plus * sigma_minus
Matrix pauli_z(int qubit, int n_qubits);

// Column-stacking vectorization: vec(rho)(i + d*j) = rho(i, j), which is
// exactly Eigen's column-major layout. Satisfies vec(A X B) =
// (B^T kron A) vec(X); superoperators below use the same convention.
Vector vec(const Matrix& m);
Matrix unvec(const Vector& v, int dim);

// Row vector tr with tr . vec(rho) = trace(rho): ones at k*dim + k.
Eigen::RowVectorXcd trace_row(int dim);

}  // namespace wgqed
