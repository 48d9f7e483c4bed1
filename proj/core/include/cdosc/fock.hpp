#pragma once

#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "cdosc/dynamics.hpp"
#include "cdosc/normal_modes.hpp"

namespace cdosc {

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

// Truncated annihilation operator: a[n-1, n] = sqrt(n), size n_max x n_max.
ComplexMatrix annihilation_matrix(int n_max);

// exp(A) of a dense matrix via scaling-and-squaring with a Taylor series.
ComplexMatrix matrix_exp(const ComplexMatrix& a);

// Squeeze operator S[r] = exp[(r/2)(a†^2 - a^2)] in the truncated basis.
// The truncated generator is exactly antihermitian, so the result is unitary.
ComplexMatrix squeeze_matrix(double r, int n_max);

// Truncated Hamiltonian of one collective mode (mode_index in {1, 2}) at
// time t:
//   H_i = omega_i a†a - (omega0 g_i^2 / 4)(a†^2 + a^2) - (omega0 g^2 / 4) I
// plus, when the control drives the mode, the counterdiabatic term
//   i (dvarpi_i / 4 varpi_i)(a^2 - a†^2).
ComplexMatrix dimer_mode_hamiltonian(const DimerParams& p, double t, int mode_index,
                                     ControlMode control, int n_max);

struct FockTrajectory {
  std::vector<double> times;
  std::vector<ComplexVector> states;
  double dt = 0.0;              // actual fixed step used
  double max_norm_drift = 0.0;  // max deviation of the state norm from 1
};

// Schrodinger evolution i dpsi/dt = H(t) psi with the midpoint-exponential
// stepper psi <- exp(-i H(t + dt/2) dt) psi; the exponential acts on the
// vector through a truncated Taylor series (sub-stepped when ||H|| dt is
// large).  Snapshots are stored every `stride` steps plus the final point.
// Norm drift beyond norm_tol aborts with AccuracyError.
FockTrajectory evolve_schrodinger(const std::function<ComplexMatrix(double)>& hamiltonian,
                                  const ComplexVector& psi0, double t0, double t1, double dt,
                                  int stride, double norm_tol = 1e-8);

// Largest |entry| of the upper-left (n - margin) x (n - margin) block,
// ignoring the rows/columns contaminated by basis truncation.
double interior_max_abs(const ComplexMatrix& m, int margin = 2);

// Largest |entry| of M - M†.
double hermiticity_defect(const ComplexMatrix& m);

// Defect of the quadrature identity b^2 - b†^2 = a^2 - a†^2 for the dressed
// mode b = [(a† + a) q - (a† - a)/q] / 2 with q = (1 - g_sq)^(1/4), measured
// on the truncation-safe interior block.  The identity holds for every
// g_sq < 1, which is what makes the counterdiabatic term shape-invariant
// under the dressing.
double quadrature_identity_defect(double g_sq, int n_max);

// Kronecker product, for two-mode operator checks.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace cdosc
