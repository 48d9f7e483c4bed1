#include <cmath>
#include <complex>

#include "cdosc/dynamics.hpp"
#include "cdosc/errors.hpp"
#include "cdosc/fock.hpp"
#include "doctest.h"
#include "test_helpers.hpp"

using namespace cdosc;
using cdosc::testing::near;
using cdosc::testing::rel_near;

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

DimerParams reference_ramp() {
  DimerParams p;
  p.omega0 = 1.0;
  p.g = Schedule::linear_ramp(0.0, 0.2, 100.0);
  p.j = Schedule::constant(0.01);
  return p;
}

}  // namespace

TEST_SUITE("fock") {
  TEST_CASE("ladder matrix elements") {
    const int n = 12;
    const ComplexMatrix a = annihilation_matrix(n);
    for (int k = 1; k < n; ++k) {
      CHECK(a(k - 1, k) == std::complex<double>(std::sqrt(static_cast<double>(k)), 0.0));
    }
    const ComplexMatrix comm = a * a.adjoint() - a.adjoint() * a;
    // [a, a+] = 1 except in the cutoff corner entry.
    CHECK(interior_max_abs(comm - ComplexMatrix::Identity(n, n), 1) <= 1e-14);
    CHECK_THROWS_AS(annihilation_matrix(1), DomainError);
  }

  TEST_CASE("matrix exponential basics") {
    const int n = 8;
    CHECK((matrix_exp(ComplexMatrix::Zero(n, n)) - ComplexMatrix::Identity(n, n))
              .cwiseAbs()
              .maxCoeff() <= 1e-15);
    ComplexMatrix d = ComplexMatrix::Zero(n, n);
    for (int k = 0; k < n; ++k) d(k, k) = kI * (0.3 * k);
    const ComplexMatrix e = matrix_exp(d);
    for (int k = 0; k < n; ++k) {
      CHECK(std::abs(e(k, k) - std::exp(kI * (0.3 * k))) <= 1e-14);
    }
  }

  TEST_CASE("squeeze matrix is unitary and composes to the identity") {
    const int n = 40;
    const ComplexMatrix s = squeeze_matrix(0.3, n);
    CHECK(interior_max_abs(s.adjoint() * s - ComplexMatrix::Identity(n, n), 4) <= 1e-13);
    CHECK(interior_max_abs(squeeze_matrix(-0.3, n) * s - ComplexMatrix::Identity(n, n), 4) <=
          1e-13);
  }

  TEST_CASE("squeezed vacuum population") {
    const int n = 60;
    const ComplexMatrix s = squeeze_matrix(0.3, n);
    const ComplexMatrix a = annihilation_matrix(n);
    const ComplexVector ground = s.col(0);
    const double population = std::real(ground.dot((a.adjoint() * a) * ground));
    CHECK(near(population, std::sinh(0.3) * std::sinh(0.3), 1e-12));
  }

  TEST_CASE("dressed-quadrature squeezing generator matches the bare one") {
    for (double g_sq : {-0.01, 0.01, 0.05}) {
      for (int n : {20, 40}) {
        CHECK(quadrature_identity_defect(g_sq, n) <= 1e-12);
      }
    }
  }

  TEST_CASE("collective-mode Hamiltonian structure") {
    const DimerParams p = reference_ramp();
    const int n = 24;
    for (int mode_index : {1, 2}) {
      for (ControlMode control : {ControlMode::None, ControlMode::Both}) {
        const ComplexMatrix h = dimer_mode_hamiltonian(p, 50.0, mode_index, control, n);
        CHECK(hermiticity_defect(h) <= 1e-13);
      }
    }
    // Vacuum expectation: only the constant -omega0 g(t)^2/4 survives.
    const ComplexMatrix h = dimer_mode_hamiltonian(p, 50.0, 1, ControlMode::None, n);
    CHECK(near(std::real(h(0, 0)), -0.0025, 1e-15));
    // The drive enters as an anti-Hermitian-looking pair of quadratic terms
    // two levels off the diagonal; with control off it must be absent.
    const ComplexMatrix driven = dimer_mode_hamiltonian(p, 50.0, 1, ControlMode::Both, n);
    CHECK(std::abs(h(0, 2).imag()) == 0.0);
    CHECK(std::abs(driven(0, 2).imag()) > 0.0);
  }

  TEST_CASE("propagator preserves norm and rotates number states") {
    const int n = 8;
    ComplexMatrix h = ComplexMatrix::Zero(n, n);
    const ComplexMatrix a = annihilation_matrix(n);
    h = 1.3 * (a.adjoint() * a);
    ComplexVector psi0 = ComplexVector::Zero(n);
    psi0(0) = 1.0 / std::sqrt(2.0);
    psi0(1) = 1.0 / std::sqrt(2.0);
    const FockTrajectory traj = evolve_schrodinger([&](double) { return h; }, psi0, 0.0, 5.0,
                                                   1e-3, 1000);
    REQUIRE(traj.times.size() == 6);
    CHECK(traj.max_norm_drift <= 1e-12);
    for (size_t k = 0; k < traj.times.size(); ++k) {
      const double t = traj.times[k];
      const ComplexVector& psi = traj.states[k];
      CHECK(std::abs(psi(0) - psi0(0)) <= 1e-12);
      CHECK(std::abs(psi(1) - psi0(1) * std::exp(-kI * (1.3 * t))) <= 1e-11);
    }
  }

  TEST_CASE("interior block maximum discards the cutoff boundary") {
    ComplexMatrix m = ComplexMatrix::Zero(4, 4);
    m(0, 1) = 0.25;
    m(3, 3) = 9.0;
    m(0, 3) = 7.0;
    CHECK(interior_max_abs(m, 1) == 0.25);
    CHECK(interior_max_abs(m, 0) == 9.0);
  }

  TEST_CASE("two-mode embedding dimensions and entries") {
    const ComplexMatrix a = annihilation_matrix(3);
    const ComplexMatrix id = ComplexMatrix::Identity(3, 3);
    const ComplexMatrix left = kron(a, id);
    REQUIRE(left.rows() == 9);
    REQUIRE(left.cols() == 9);
    // (a x I)(i*3+k, j*3+l) = a(i,j) delta(k,l)
    CHECK(left(0, 3) == a(0, 1));
    CHECK(left(1, 4) == a(0, 1));
    CHECK(left(0, 4) == std::complex<double>(0.0, 0.0));
  }
}
