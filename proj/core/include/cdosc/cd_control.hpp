#pragma once

#include "cdosc/normal_modes.hpp"

namespace cdosc {

// Coefficients of the auxiliary (counterdiabatic) Hamiltonian that suppresses
// nonadiabatic transitions of a two-mode quadratic model.
//
// Position-position family:
//   H_aux = -local (q1 p1 + p1 q1 + q2 p2 + p2 q2) - coupling (q1 p2 + q2 p1),
//   local = domega1/(8 omega1) + domega2/(8 omega2),
//   coupling = domega1/(4 omega1) - domega2/(4 omega2).
//
// Magnetic family:
//   H_aux = -local (q1 p1 + p1 q1 - q2 p2 - p2 q2)
//           - coupling ((alpha/beta) p1 p2 - (beta/alpha) q1 q2),
//   local = (dOmega Omega - domega_b omega_b) / (4 omega0^2),
//   coupling = 2 (dOmega omega_b - domega_b Omega) / omega0^2.
struct CDCoefficients {
  double local;
  double coupling;
};

// Single-mode counterdiabatic coefficient -domega/(4 omega): the prefactor of
// the (qp + pq) squeezing generator that freezes one harmonic mode.
double single_mode_cd(double omega, double domega);

CDCoefficients pp_cd_coefficients(const PositionCouplingParams& p, double t);

CDCoefficients mf_cd_coefficients(const MagneticCouplingParams& p, double t);

// Squeeze-rate coefficient dvarpi/(2 varpi) = -dg_sq/(4 (1 - g_sq)) of one
// dimer collective mode; this is the prefactor of i(c^2 - c†^2)/2 in the
// counterdiabatic term that freezes the mode.  Requires g_sq < 1.
double dimer_mode_cd(double g_sq, double dg_sq);

// local = (cd1 + cd2)/4 and coupling = (cd1 - cd2)/2 built from the per-mode
// squeeze rates: the same symmetric/antisymmetric split as the
// position-position family, expressed through the dressed frequencies.
CDCoefficients dimer_cd_coefficients(const DimerParams& p, double t);

// Adiabaticity parameter Q* = 1/sqrt(1 - domega^2/(4 omega^4)) of one mode;
// Q* = 1 exactly for a frozen mode and grows as driving speeds up.
// Throws DomainError when domega^2 >= 4 omega^4 (drive too fast for the
// expression to stay real).
double adiabaticity_parameter(double omega, double domega);

// One mode's contribution to the mean energy under counterdiabatic driving of
// a thermal initial state at inverse temperature beta.
struct ModeStaInput {
  double omega_t;  // frequency at the time of interest
  double omega_0;  // frequency at preparation time
  double qstar;    // adiabaticity parameter at the time of interest
  double beta;     // inverse temperature (may be +infinity for ground state)
};

// Sum over both modes of (omega_t/omega_0)(Q* - 1)(omega_0/2) coth(beta omega_0/2).
double mean_sta_energy(const ModeStaInput& mode1, const ModeStaInput& mode2);

}  // namespace cdosc
