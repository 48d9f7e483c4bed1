#include "cdosc/observables.hpp"

#include <cmath>
#include <complex>
#include <string>

#include "cdosc/errors.hpp"

namespace cdosc {

namespace {

// <H_i> in the bare-mode frame: the quadratic form uses |u + v|^2, which is
// the evolved expectation of (c + c†)^2; the constant folds the j shift.
double mode_energy(std::complex<double> u, std::complex<double> v, double omega0, double g_sq,
                   double dg_sq, double j_term, bool driven) {
  const double quad = std::norm(u + v);
  double e = omega0 * std::norm(v) - 0.25 * omega0 * g_sq * quad + j_term;
  if (driven) {
    e += dimer_mode_cd(g_sq, dg_sq) * std::imag(std::conj(u) * v);
  }
  return e;
}

}  // namespace

double mode_cd_energy(const BogoliubovState& s, const DimerParams& p, double t, int mode_index,
                      ControlMode control) {
  if (mode_index != 1 && mode_index != 2) {
    throw DomainError("mode_index must be 1 or 2, got " + std::to_string(mode_index));
  }
  const DimerModes m = dimer_normal_modes(p, t);
  const double j = p.j.eval(t).value;
  if (mode_index == 1) {
    const bool driven = control != ControlMode::None;
    return mode_energy(s.u1, s.v1, p.omega0, m.g1_sq, m.dg1_sq, -0.25 * p.omega0 * j, driven);
  }
  const bool driven = control == ControlMode::Both;
  return mode_energy(s.u2, s.v2, p.omega0, m.g2_sq, m.dg2_sq, 0.25 * p.omega0 * j, driven);
}

EnergyBreakdown residual_energy(const BogoliubovState& s, const DimerParams& p, double t,
                                ControlMode control) {
  const DimerModes m = dimer_normal_modes(p, t);
  const double j = p.j.eval(t).value;
  EnergyBreakdown out;
  out.e1 = mode_cd_energy(s, p, t, 1, control);
  out.e2 = mode_cd_energy(s, p, t, 2, control);
  out.eg1 = diagonalize_squeezed(p.omega0, m.g1_sq, -0.25 * p.omega0 * j).ground_energy;
  out.eg2 = diagonalize_squeezed(p.omega0, m.g2_sq, 0.25 * p.omega0 * j).ground_energy;
  out.e_r = out.e1 + out.e2 - out.eg1 - out.eg2;
  return out;
}

std::vector<CDCoefficients> coefficient_traces(const DimerParams& p,
                                               const std::vector<double>& times) {
  std::vector<CDCoefficients> out;
  out.reserve(times.size());
  for (double t : times) {
    out.push_back(dimer_cd_coefficients(p, t));
  }
  return out;
}

}  // namespace cdosc
