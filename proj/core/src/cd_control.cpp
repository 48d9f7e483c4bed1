#include "cdosc/cd_control.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "cdosc/errors.hpp"

namespace cdosc {

double single_mode_cd(double omega, double domega) {
  if (!(omega > 0.0)) {
    throw DomainError("single_mode_cd requires omega > 0, got " + std::to_string(omega));
  }
  return -domega / (4.0 * omega);
}

CDCoefficients pp_cd_coefficients(const PositionCouplingParams& p, double t) {
  const ModeFrequencies f = pp_normal_frequencies(p, t);
  const double l1 = f.domega1 / f.omega1;
  const double l2 = f.domega2 / f.omega2;
  return {0.125 * (l1 + l2), 0.25 * (l1 - l2)};
}

CDCoefficients mf_cd_coefficients(const MagneticCouplingParams& p, double t) {
  const MagneticDerived d = mf_derived(p, t);
  if (!(d.omega0 > 0.0)) {
    throw DomainError("magnetic CD coefficients need omega0 > 0 at t = " + std::to_string(t));
  }
  const double w0_sq = d.omega0 * d.omega0;
  const double local = (d.dlocal * d.local - d.domega_b * d.omega_b) / (4.0 * w0_sq);
  const double coupling = 2.0 * (d.dlocal * d.omega_b - d.domega_b * d.local) / w0_sq;
  return {local, coupling};
}

double dimer_mode_cd(double g_sq, double dg_sq) {
  if (!(g_sq < 1.0)) {
    throw DomainError("dimer mode squeeze rate requires g_sq < 1, got " + std::to_string(g_sq));
  }
  return -dg_sq / (4.0 * (1.0 - g_sq));
}

CDCoefficients dimer_cd_coefficients(const DimerParams& p, double t) {
  const DimerModes m = dimer_normal_modes(p, t);
  const double cd1 = dimer_mode_cd(m.g1_sq, m.dg1_sq);
  const double cd2 = dimer_mode_cd(m.g2_sq, m.dg2_sq);
  return {0.25 * (cd1 + cd2), 0.5 * (cd1 - cd2)};
}

double adiabaticity_parameter(double omega, double domega) {
  if (!(omega > 0.0)) {
    throw DomainError("adiabaticity parameter requires omega > 0");
  }
  const double ratio = domega * domega / (4.0 * omega * omega * omega * omega);
  if (ratio >= 1.0) {
    throw DomainError("drive too fast for adiabaticity parameter: domega^2 = " +
                      std::to_string(domega * domega) + " >= 4 omega^4 = " +
                      std::to_string(4.0 * omega * omega * omega * omega));
  }
  return 1.0 / std::sqrt(1.0 - ratio);
}

namespace {

double mode_term(const ModeStaInput& m) {
  if (!(m.omega_0 > 0.0) || !(m.omega_t > 0.0)) {
    throw DomainError("mean STA energy requires positive mode frequencies");
  }
  if (!(m.beta > 0.0)) {
    throw DomainError("mean STA energy requires beta > 0");
  }
  // coth(x) -> 1 as x -> inf; std::tanh saturates to 1 well before overflow,
  // so the ground-state limit (beta = inf) falls out naturally.
  const double coth = 1.0 / std::tanh(0.5 * m.beta * m.omega_0);
  return (m.omega_t / m.omega_0) * (m.qstar - 1.0) * 0.5 * m.omega_0 * coth;
}

}  // namespace

double mean_sta_energy(const ModeStaInput& mode1, const ModeStaInput& mode2) {
  return mode_term(mode1) + mode_term(mode2);
}

}  // namespace cdosc
