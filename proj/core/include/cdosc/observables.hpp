#pragma once

#include <vector>

#include "cdosc/cd_control.hpp"
#include "cdosc/dynamics.hpp"
#include "cdosc/normal_modes.hpp"

namespace cdosc {

// Instantaneous mode energies and the residual (nonadiabatic) excess.
struct EnergyBreakdown {
  double e1 = 0.0;   // mode-1 energy (control term included when mode 1 is driven)
  double e2 = 0.0;   // mode-2 energy (control term included when mode 2 is driven)
  double eg1 = 0.0;  // instantaneous ground energy of mode 1
  double eg2 = 0.0;  // instantaneous ground energy of mode 2
  double e_r = 0.0;  // e1 + e2 - eg1 - eg2
};

// Energy of one collective mode (mode_index in {1, 2}) in the Heisenberg
// state s at time t:
//   e_i = omega0 |v_i|^2 - (omega0 g_i^2 / 4) |u_i + v_i|^2 -+ omega0 J / 4
// (j term: minus for mode 1, plus for mode 2), plus the drive contribution
// (dvarpi_i / 2 varpi_i) Im(conj(u_i) v_i) when the control drives the mode.
// On the instantaneous ground state this evaluates exactly to the mode's
// ground energy.
double mode_cd_energy(const BogoliubovState& s, const DimerParams& p, double t, int mode_index,
                      ControlMode control);

// Full energy bookkeeping at one instant.  e_r may dip slightly below zero
// from integrator roundoff; it is reported unclamped.
EnergyBreakdown residual_energy(const BogoliubovState& s, const DimerParams& p, double t,
                                ControlMode control);

// Symmetric/antisymmetric control coefficients sampled on a time grid.
std::vector<CDCoefficients> coefficient_traces(const DimerParams& p,
                                               const std::vector<double>& times);

}  // namespace cdosc
