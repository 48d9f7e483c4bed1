#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "cdosc/normal_modes.hpp"

namespace cdosc {

// Which collective modes receive the counterdiabatic drive.
enum class ControlMode { None, Mode1Only, Both };

// Heisenberg-picture Bogoliubov coefficients of the two collective modes:
// c_H = u1 c + conj(v1) c†, d_H = u2 d + conj(v2) d†.
// Physical states satisfy |u_i|^2 - |v_i|^2 = 1.
struct BogoliubovState {
  std::complex<double> u1{1.0, 0.0};
  std::complex<double> v1{0.0, 0.0};
  std::complex<double> u2{1.0, 0.0};
  std::complex<double> v2{0.0, 0.0};
};

struct Trajectory {
  std::vector<double> times;
  std::vector<BogoliubovState> states;
  double dt = 0.0;                    // actual fixed step used
  double max_constraint_drift = 0.0;  // max |constraint defect| seen at any step
};

// Deviation of |u|^2 - |v|^2 from 1 for one mode.
double constraint_defect(std::complex<double> u, std::complex<double> v);

// Equations of motion for the Bogoliubov coefficients.  Per mode:
//   i du/dt = omega0 [(1 - g_sq/2) u - (g_sq/2) v] - i cd v,
//  -i dv/dt = omega0 [(1 - g_sq/2) v - (g_sq/2) u] + i cd u,
// with cd = dvarpi/(2 varpi) = -dg_sq/(4 (1 - g_sq)) when the control drives
// that mode and 0 otherwise (varpi = omega0 sqrt(1 - g_sq) is the dressed
// frequency).  The flow conserves |u|^2 - |v|^2 exactly.
BogoliubovState bogoliubov_rhs(const BogoliubovState& s, double t, const DimerParams& p,
                               ControlMode control);

// Heisenberg representation of the instantaneous two-mode ground state:
// (u_i, v_i) = (cosh r_i, sinh r_i) with r_i the squeeze parameter of mode i.
BogoliubovState adiabatic_ground_state(const DimerParams& p, double t);

// Classical fixed-step RK4 over [t0, t1].  The step is adjusted to the nearest
// divisor of the span so the final point lands exactly on t1.  Snapshots are
// stored every `stride` steps plus the final point.  The integration starts
// from `initial` if given, otherwise from the instantaneous ground state at
// t0 (the prepared-system convention).  The worst Bogoliubov-constraint
// defect over the run is recorded in the result; if it exceeds `drift_tol`
// at any step the integration aborts with AccuracyError.
Trajectory integrate(const DimerParams& p, ControlMode control, double t0, double t1, double dt,
                     int stride, std::optional<BogoliubovState> initial = std::nullopt,
                     double drift_tol = 1e-8);

}  // namespace cdosc
