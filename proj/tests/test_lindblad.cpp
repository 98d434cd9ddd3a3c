#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "oracles.hpp"
#include "wgqed/geometry.hpp"
#include "wgqed/lindblad.hpp"
#include "wgqed/operators.hpp"
#include "wgqed/units.hpp"

using namespace wgqed;

namespace {

EffectiveModel single_qubit_model(double delta_MHz, double rabi_MHz,
                                  double gamma1 = 26.0, double gamma_nr = 0.18,
                                  double gamma_phi = 0.2) {
  Geometry geom;
  geom.positions_mm = {0.0};
  geom.lambda_mm = 20.0;
  geom.operating_freq_GHz = 6.4;
  RateSet rates{{gamma1}, {gamma_nr}, {gamma_phi}};
  DriveSpec drive;
  drive.freq_GHz = 6.4 + GHz_from_MHz(delta_MHz);
  drive.rabi_MHz = rabi_MHz;
  return build_effective_model({6.4}, geom, rates, drive);
}

EffectiveModel lambda_pair_model(double rabi_MHz, double gamma1 = 26.0,
                                 double gamma_nr = 0.0,
                                 double gamma_phi = 0.0) {
  Geometry geom = Geometry::pair(1.0, 6.4);
  RateSet rates{{gamma1, gamma1}, {gamma_nr, gamma_nr},
                {gamma_phi, gamma_phi}};
  DriveSpec drive;
  drive.freq_GHz = 6.4;
  drive.rabi_MHz = rabi_MHz;
  return build_effective_model({6.4, 6.4}, geom, rates, drive);
}

Vector bright_state() {
  Vector b = Vector::Zero(4);
  b(1) = 1.0 / std::sqrt(2.0);
  b(2) = 1.0 / std::sqrt(2.0);
  return b;
}

Vector dark_state() {
  Vector d = Vector::Zero(4);
  d(1) = 1.0 / std::sqrt(2.0);
  d(2) = -1.0 / std::sqrt(2.0);
  return d;
}

}  // namespace

TEST_CASE("density operator validation") {
  DensityOperator g = DensityOperator::ground(2);
  CHECK(g.dim() == 4);
  CHECK(g.matrix()(0, 0) == Complex(1.0, 0.0));
  CHECK(g.trace_defect() == doctest::Approx(0.0));

  Vector psi(2);
  psi << Complex(3.0, 0.0), Complex(0.0, 4.0);
  DensityOperator p = DensityOperator::pure(psi);  // normalizes
  CHECK(std::abs(p.matrix()(0, 0)) == doctest::Approx(9.0 / 25.0));
  CHECK(p.min_eigenvalue() == doctest::Approx(0.0).epsilon(1e-12));

  Matrix bad_trace = Matrix::Identity(2, 2);
  CHECK_THROWS_AS(DensityOperator{bad_trace}, std::invalid_argument);

  Matrix bad_herm = Matrix::Zero(2, 2);
  bad_herm(0, 0) = 1.0;
  bad_herm(0, 1) = Complex(0.0, 1e-3);
  CHECK_THROWS_AS(DensityOperator{bad_herm}, std::invalid_argument);

  Matrix bad_pos = Matrix::Zero(2, 2);
  bad_pos(0, 0) = 1.5;
  bad_pos(1, 1) = -0.5;
  CHECK_THROWS_AS(DensityOperator{bad_pos}, std::invalid_argument);

  CHECK_THROWS_AS(DensityOperator::pure(Vector::Zero(2)),
                  std::invalid_argument);
}

TEST_CASE("hamiltonian matrix elements") {
  const EffectiveModel m = single_qubit_model(-20.0, 5.0);
  const Matrix h = hamiltonian(m);
  // H = -Delta n + Omega/2 (sp + sm), phase zero at the reference qubit.
  CHECK(h(0, 0) == Complex(0.0, 0.0));
  // The detuning passes through a GHz-level subtraction, so the match is
  // limited by rounding of that difference, not exact.
  CHECK(std::abs(h(1, 1) - Complex(angular_from_MHz(20.0), 0.0)) < 1e-6);
  CHECK(std::abs(h(1, 0) - Complex(angular_from_MHz(2.5), 0.0)) < 1e-12);
  CHECK((h - h.adjoint()).norm() == doctest::Approx(0.0));
}

TEST_CASE("hamiltonian carries exchange and drive phases for a pair") {
  Geometry geom = Geometry::pair(0.75, 4.8);
  RateSet rates{{13.0, 13.0}, {0.0, 0.0}, {0.0, 0.0}};
  DriveSpec drive;
  drive.freq_GHz = 4.8;
  drive.rabi_MHz = 8.7;
  const EffectiveModel m = build_effective_model({4.8, 4.8}, geom, rates, drive);
  const Matrix h = hamiltonian(m);
  // Exchange block: J (sp_0 sm_1 + h.c.) couples |ge> (1) and |eg> (2).
  CHECK(std::abs(h(2, 1) - Complex(m.exchange(0, 1), 0.0)) < 1e-12);
  // Drive on qubit 1 carries phase 3 pi / 2: sp_1 acts on |gg> -> |ge>.
  const Complex expect =
      0.5 * m.drive_amp(1) * std::exp(Complex(0.0, 1.5 * kTwoPi / 2.0));
  CHECK(std::abs(h(1, 0) - expect) < 1e-12);
  CHECK((h - h.adjoint()).norm() == doctest::Approx(0.0));
}

TEST_CASE("vectorized generator matches the direct master equation") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 1 + (trial % 2);
    const EffectiveModel m = oracles::random_model(rng, n);
    const Liouvillian L = liouvillian(m);
    const Matrix h = hamiltonian(m);
    const Matrix rho = oracles::random_density(rng, 1 << n);
    const Matrix direct = oracles::master_rhs(m, h, rho);
    const Matrix via_l = unvec(L.matrix() * vec(rho), 1 << n);
    const double scale = std::max(1.0, direct.norm());
    CHECK((direct - via_l).norm() / scale < 1e-12);
  }
}

TEST_CASE("generator preserves trace and damps") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    const EffectiveModel m = oracles::random_model(rng, 2);
    const Liouvillian L = liouvillian(m);
    const double scale = L.matrix().cwiseAbs().maxCoeff();
    CHECK(L.trace_defect() < 1e-10 * scale);
    Eigen::ComplexEigenSolver<Matrix> es(L.matrix());
    CHECK(es.eigenvalues().real().maxCoeff() < 1e-9 * scale);
  }
}

TEST_CASE("free decay and coherence rates of a single qubit") {
  const double gamma1 = 26.0, gamma_nr = 0.18, gamma_phi = 0.2;
  const EffectiveModel m = single_qubit_model(0.0, 0.0, gamma1, gamma_nr,
                                              gamma_phi);
  const Liouvillian L = liouvillian(m);
  Vector plus(2);
  plus << 1.0, 1.0;
  const DensityOperator rho0 = DensityOperator::pure(plus);
  const double t = 0.004;  // us
  const DensityOperator rho = evolve(rho0, L, t);

  const double g_tot = angular_from_MHz(gamma1 + gamma_nr);
  const double g2 = 0.5 * g_tot + angular_from_MHz(gamma_phi);
  CHECK(expectation(rho, number(0, 1)).real() ==
        doctest::Approx(0.5 * std::exp(-g_tot * t)).epsilon(1e-10));
  CHECK(std::abs(expectation(rho, lower(0, 1))) ==
        doctest::Approx(0.5 * std::exp(-g2 * t)).epsilon(1e-10));
}

TEST_CASE("evolve agrees with an eigendecomposition propagator") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 8; ++trial) {
    const EffectiveModel m = oracles::random_model(rng, 2);
    const Liouvillian L = liouvillian(m);
    const Matrix rho0 = oracles::random_density(rng, 4);
    const double t = 0.02 * (trial + 1);
    const DensityOperator out = evolve(DensityOperator(rho0), L, t);
    const Matrix ref =
        unvec(oracles::expm_eigen(L.matrix(), t) * vec(rho0), 4);
    CHECK((out.matrix() - ref).cwiseAbs().maxCoeff() < 1e-8);
    CHECK(out.trace_defect() < 1e-10);
  }
}

TEST_CASE("bright state decays at twice the single-qubit rate") {
  const double gamma1 = 26.0;
  const EffectiveModel m = lambda_pair_model(0.0, gamma1);
  const Liouvillian L = liouvillian(m);
  const Vector b = bright_state();
  const double big_gamma = 2.0 * angular_from_MHz(gamma1);
  for (double t : {0.001, 0.005, 0.02}) {
    const DensityOperator rho = evolve(DensityOperator::pure(b), L, t);
    const double pb = (b.adjoint() * rho.matrix() * b)(0).real();
    CHECK(pb == doctest::Approx(std::exp(-big_gamma * t)).epsilon(1e-9));
  }
}

TEST_CASE("dark state is stationary at d = lambda, with and without drive") {
  const Vector d = dark_state();
  for (double rabi : {0.0, 7.5}) {
    const EffectiveModel m = lambda_pair_model(rabi);
    const Liouvillian L = liouvillian(m);
    const DensityOperator rho = evolve(DensityOperator::pure(d), L, 0.05);
    CHECK((rho.matrix() - d * d.adjoint()).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("dephasing feeds the dark state out of the driven ladder") {
  const EffectiveModel m = lambda_pair_model(7.5, 26.0, 0.0, 0.5);
  const Liouvillian L = liouvillian(m);
  const Vector d = dark_state();
  const DensityOperator rho = evolve(DensityOperator::ground(2), L, 0.5);
  const double pd = (d.adjoint() * rho.matrix() * d)(0).real();
  CHECK(pd > 1e-3);
}

TEST_CASE("driven pair at d = lambda closes on the three-level ladder") {
  const EffectiveModel m = lambda_pair_model(7.5);
  const Liouvillian L = liouvillian(m);
  const Vector d = dark_state();
  Vector gg = Vector::Zero(4), ee = Vector::Zero(4);
  gg(0) = 1.0;
  ee(3) = 1.0;
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> u(0.1, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    // Random state supported on span{gg, B, ee} only.
    Vector psi = u(rng) * gg + u(rng) * bright_state() + u(rng) * ee;
    const Matrix rho = psi * psi.adjoint() / psi.squaredNorm();
    const Matrix rhodot = unvec(L.matrix() * vec(rho), 4);
    CHECK((rhodot * d).norm() < 1e-9);
    CHECK((d.adjoint() * rhodot).norm() < 1e-9);
  }
}

TEST_CASE("doubly excited state cascades entirely through the bright state") {
  const double gamma1 = 26.0;
  const EffectiveModel m = lambda_pair_model(0.0, gamma1);
  const Liouvillian L = liouvillian(m);
  Vector ee = Vector::Zero(4);
  ee(3) = 1.0;
  const Matrix rhodot = unvec(L.matrix() * vec((ee * ee.adjoint()).eval()), 4);
  const Vector b = bright_state();
  const Vector d = dark_state();
  const double big_gamma = 2.0 * angular_from_MHz(gamma1);
  CHECK((ee.adjoint() * rhodot * ee)(0).real() ==
        doctest::Approx(-big_gamma).epsilon(1e-12));
  CHECK((b.adjoint() * rhodot * b)(0).real() ==
        doctest::Approx(big_gamma).epsilon(1e-12));
  CHECK(std::abs((d.adjoint() * rhodot * d)(0)) < 1e-12);
}

TEST_CASE("steady state matches the driven damped Bloch solution") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const double delta_MHz = 40.0 * u(rng) - 20.0;
    const double rabi_MHz = 0.1 + 20.0 * u(rng);
    const double g1 = 5.0 + 25.0 * u(rng);
    const double gnr = 2.0 * u(rng);
    const double gphi = 2.0 * u(rng);
    const EffectiveModel m =
        single_qubit_model(delta_MHz, rabi_MHz, g1, gnr, gphi);
    const DensityOperator rho = steady_state(liouvillian(m));
    const oracles::BlochSteady ref = oracles::bloch_steady(
        angular_from_MHz(delta_MHz), angular_from_MHz(rabi_MHz),
        angular_from_MHz(g1), angular_from_MHz(gnr), angular_from_MHz(gphi));
    CHECK(std::abs(expectation(rho, lower(0, 1)) - ref.sm) < 1e-10);
    CHECK(expectation(rho, number(0, 1)).real() ==
          doctest::Approx(ref.population).epsilon(1e-9));
  }
}

TEST_CASE("steady state agrees with long-time evolution for a pair") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 5; ++trial) {
    const EffectiveModel m = oracles::random_model(rng, 2);
    const Liouvillian L = liouvillian(m);
    const DensityOperator ss = steady_state(L);
    const DensityOperator late = evolve(DensityOperator::ground(2), L, 5.0);
    CHECK((ss.matrix() - late.matrix()).cwiseAbs().maxCoeff() < 1e-8);
    CHECK((L.matrix() * vec(ss.matrix())).norm() <
          1e-9 * std::max(1.0, L.matrix().norm()));
  }
}

TEST_CASE("ideal d = lambda geometry has no unique steady state") {
  const EffectiveModel m = lambda_pair_model(7.5);
  const Liouvillian L = liouvillian(m);
  bool threw = false;
  try {
    steady_state(L);
  } catch (const DegenerateSteadyState& e) {
    threw = true;
    CHECK(e.null_basis.size() >= 2);
    for (const Matrix& v : e.null_basis)
      CHECK((L.matrix() * vec(v)).norm() < 1e-6 * std::max(1.0, v.norm()));
  }
  CHECK(threw);
}

TEST_CASE("weak nonradiative decay restores a unique steady state") {
  const EffectiveModel m = lambda_pair_model(7.5, 26.0, 1e-4);
  const DensityOperator rho = steady_state(liouvillian(m));
  CHECK(rho.trace_defect() < 1e-10);
  CHECK(rho.min_eigenvalue() > -1e-9);
}
