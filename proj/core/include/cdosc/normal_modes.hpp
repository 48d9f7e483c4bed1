#pragma once

#include <Eigen/Dense>

#include "cdosc/schedule.hpp"

namespace cdosc {

// --- model parameter sets ---------------------------------------------------

// Two identical oscillators of mass m with a position-position coupling
// gamma(t) q1 q2 on top of the bare frequency omega(t).
struct PositionCouplingParams {
  double m = 1.0;
  Schedule omega = Schedule::constant(1.0);
  Schedule gamma = Schedule::constant(0.0);
};

// Two oscillators of mass m coupled through a synthetic magnetic field:
// H = (p1^2 + p2^2)/2m + m Omega(t)^2 (q1^2 + q2^2)/2 + omega_b(t) (p1 q2 - p2 q1),
// with Omega(t)^2 = omega0(t)^2 + omega_b(t)^2.  The coupling is the
// angular-momentum form; it splits the degenerate pair into circular modes.
struct MagneticCouplingParams {
  double m = 1.0;
  Schedule omega0 = Schedule::constant(1.0);
  Schedule omega_b = Schedule::constant(0.0);
};

// Two ultrastrongly-coupled boson modes (collective dimer): carrier frequency
// omega0, local squeezing strength g(t)^2 and hopping J(t).  The symmetric and
// antisymmetric combinations decouple into single squeezed modes with
// effective strengths g^2 - J and g^2 + J.
struct DimerParams {
  double omega0 = 1.0;
  Schedule g = Schedule::constant(0.0);
  Schedule j = Schedule::constant(0.0);
};

// --- derived per-time quantities --------------------------------------------

// Instantaneous normal-mode frequencies and their exact time derivatives.
// For the magnetic family mode 1 is the slow (Omega - omega_b) circular mode
// and mode 2 the fast one.
struct ModeFrequencies {
  double omega1;
  double omega2;
  double domega1;
  double domega2;
};

// Scalar inputs of the magnetic family at one instant, with exact derivatives.
struct MagneticDerived {
  double omega0;
  double domega0;
  double omega_b;
  double domega_b;
  double local;   // Omega = sqrt(omega0^2 + omega_b^2)
  double dlocal;  // dOmega/dt
};

// Per-instant decomposition of the dimer into its two collective modes.
struct DimerModes {
  double omega1;  // omega0 (1 - g1_sq / 2)
  double omega2;  // omega0 (1 - g2_sq / 2)
  double g1_sq;   // g^2 - J
  double g2_sq;   // g^2 + J
  double dg1_sq;  // d/dt (g^2 - J)
  double dg2_sq;  // d/dt (g^2 + J)
};

// Squeeze parameter, dressed frequency and ground energy of a single mode
// H = omega c†c - (omega0 g_sq / 4)(c†^2 + c^2) + const.
struct SqueezedModeInfo {
  double r;              // -(1/4) ln(1 - g_sq); diagonalising squeeze parameter
  double frequency;      // omega0 sqrt(1 - g_sq)
  double ground_energy;  // omega0 (sqrt(1 - g_sq) - 1)/2 + j_term
};

// --- linear canonical maps ---------------------------------------------------

// Linear canonical transformation on the quadrature vector (q1, p1, q2, p2).
// The stored matrix maps normal-mode quadratures to the original ones,
// r_original = matrix * R_normal, and satisfies S Omega S^T = Omega for the
// canonical two-mode symplectic form Omega.
struct SymplecticMap {
  Eigen::Matrix4d matrix;

  static Eigen::Matrix4d symplectic_form();

  // max_ij |(S Omega S^T - Omega)_ij|; exactly symplectic maps give ~1e-16.
  double symplectic_defect() const;

  // Inverse through the symplectic identity S^{-1} = Omega S^T Omega^T
  // (no numerical matrix inversion involved).
  SymplecticMap inverse() const;
};

// --- operations ---------------------------------------------------------------

// Normal frequencies omega_{1,2} = sqrt(omega^2 ± gamma/m) of the
// position-position family, with exact derivatives
// domega_i = (omega domega ± dgamma/2m) / omega_i.
// Throws ImaginaryFrequencyError when omega^2 - |gamma|/m <= 0.
ModeFrequencies pp_normal_frequencies(const PositionCouplingParams& p, double t);

// The (time-independent) normalized map q1 = (Q1 + Q2)/sqrt(2), ... that
// decouples the position-position coupling.
SymplecticMap pp_transform();

// Quadratic form A with H = (1/2) r^T A r for the position-position family.
Eigen::Matrix4d pp_hamiltonian_form(const PositionCouplingParams& p, double t);

MagneticDerived mf_derived(const MagneticCouplingParams& p, double t);

// Circular-mode frequencies Omega -+ omega_b with exact derivatives.
ModeFrequencies mf_normal_frequencies(const MagneticCouplingParams& p, double t);

// Map from circular-mode quadratures (Q+, P+, Q-, P-) to (q1, p1, q2, p2).
// Built from delta± = sqrt(1/(m omega± Omega)) and eps± = sqrt(m omega±/Omega);
// conjugating the Hamiltonian form by it decouples the modes at frequencies
// omega±.  At omega_b(t) = 0 the pair is degenerate and already decoupled, so
// the identity map is returned instead of the (still valid, but mixing)
// circular-mode map.
SymplecticMap mf_transform(const MagneticCouplingParams& p, double t);

// Quadratic form A with H = (1/2) r^T A r for the magnetic family.
Eigen::Matrix4d mf_hamiltonian_form(const MagneticCouplingParams& p, double t);

// Collective-mode split of the dimer at time t.
// Throws ImaginaryFrequencyError when 1 - g_i^2 <= 0 for either mode.
DimerModes dimer_normal_modes(const DimerParams& p, double t);

// Diagonalization data of a single squeezed mode; j_term is the additive
// constant (-+ omega0 J / 4) carried into the ground energy.
// Requires g_sq < 1 (g_sq may be negative).
SqueezedModeInfo diagonalize_squeezed(double omega0, double g_sq, double j_term);

}  // namespace cdosc
