#include "cdosc/normal_modes.hpp"

#include <cmath>
#include <string>

#include "cdosc/errors.hpp"

namespace cdosc {

Eigen::Matrix4d SymplecticMap::symplectic_form() {
  Eigen::Matrix4d f = Eigen::Matrix4d::Zero();
  f(0, 1) = 1.0;
  f(1, 0) = -1.0;
  f(2, 3) = 1.0;
  f(3, 2) = -1.0;
  return f;
}

double SymplecticMap::symplectic_defect() const {
  const Eigen::Matrix4d f = symplectic_form();
  return (matrix * f * matrix.transpose() - f).cwiseAbs().maxCoeff();
}

SymplecticMap SymplecticMap::inverse() const {
  const Eigen::Matrix4d f = symplectic_form();
  return SymplecticMap{f * matrix.transpose() * f.transpose()};
}

ModeFrequencies pp_normal_frequencies(const PositionCouplingParams& p, double t) {
  const auto [w, dw] = p.omega.eval(t);
  const auto [c, dc] = p.gamma.eval(t);
  const double w1_sq = w * w + c / p.m;
  const double w2_sq = w * w - c / p.m;
  if (!(w1_sq > 0.0) || !(w2_sq > 0.0)) {
    throw ImaginaryFrequencyError(
        "position coupling exceeds confinement at t = " + std::to_string(t) +
        " (omega^2 = " + std::to_string(w * w) +
        ", gamma/m = " + std::to_string(c / p.m) + ")");
  }
  const double w1 = std::sqrt(w1_sq);
  const double w2 = std::sqrt(w2_sq);
  // d(omega_i^2)/dt = 2 omega domega ± dgamma/m.
  return {w1, w2, (w * dw + dc / (2.0 * p.m)) / w1, (w * dw - dc / (2.0 * p.m)) / w2};
}

SymplecticMap pp_transform() {
  const double s = 1.0 / std::sqrt(2.0);
  Eigen::Matrix4d mat;
  // rows: q1, p1, q2, p2; columns: Q1, P1, Q2, P2.
  mat << s, 0, s, 0,
         0, s, 0, s,
         s, 0, -s, 0,
         0, s, 0, -s;
  return SymplecticMap{mat};
}

Eigen::Matrix4d pp_hamiltonian_form(const PositionCouplingParams& p, double t) {
  const double w = p.omega.eval(t).value;
  const double c = p.gamma.eval(t).value;
  Eigen::Matrix4d a = Eigen::Matrix4d::Zero();
  a(0, 0) = p.m * w * w;
  a(1, 1) = 1.0 / p.m;
  a(2, 2) = p.m * w * w;
  a(3, 3) = 1.0 / p.m;
  a(0, 2) = a(2, 0) = c;
  return a;
}

MagneticDerived mf_derived(const MagneticCouplingParams& p, double t) {
  const auto [w0, dw0] = p.omega0.eval(t);
  const auto [wb, dwb] = p.omega_b.eval(t);
  const double local = std::sqrt(w0 * w0 + wb * wb);
  if (!(local > 0.0)) {
    throw ImaginaryFrequencyError("magnetic family needs omega0 or omega_b nonzero at t = " +
                                  std::to_string(t));
  }
  const double dlocal = (w0 * dw0 + wb * dwb) / local;
  return {w0, dw0, wb, dwb, local, dlocal};
}

ModeFrequencies mf_normal_frequencies(const MagneticCouplingParams& p, double t) {
  const MagneticDerived d = mf_derived(p, t);
  const double w1 = d.local - d.omega_b;
  const double w2 = d.local + d.omega_b;
  if (!(w1 > 0.0) || !(w2 > 0.0)) {
    throw ImaginaryFrequencyError("circular mode frequency not positive at t = " +
                                  std::to_string(t));
  }
  return {w1, w2, d.dlocal - d.domega_b, d.dlocal + d.domega_b};
}

SymplecticMap mf_transform(const MagneticCouplingParams& p, double t) {
  const MagneticDerived d = mf_derived(p, t);
  if (d.omega_b == 0.0) {
    // Degenerate pair: already decoupled, keep the original modes.
    return SymplecticMap{Eigen::Matrix4d::Identity()};
  }
  const ModeFrequencies f = mf_normal_frequencies(p, t);
  const double alpha = std::sqrt(1.0 / (2.0 * p.m));
  const double beta = d.local * std::sqrt(p.m / 2.0);
  const double dp = std::sqrt(1.0 / (p.m * f.omega1 * d.local));
  const double dm = std::sqrt(1.0 / (p.m * f.omega2 * d.local));
  const double ep = std::sqrt(p.m * f.omega1 / d.local);
  const double em = std::sqrt(p.m * f.omega2 / d.local);

  // Original -> circular: Q± = delta±(beta q1 ± alpha p2),
  //                       P± = eps±(alpha p1 ∓ beta q2).
  Eigen::Matrix4d fwd;
  fwd << dp * beta, 0, 0, dp * alpha,
         0, ep * alpha, -ep * beta, 0,
         dm * beta, 0, 0, -dm * alpha,
         0, em * alpha, em * beta, 0;
  return SymplecticMap{fwd}.inverse();
}

Eigen::Matrix4d mf_hamiltonian_form(const MagneticCouplingParams& p, double t) {
  const MagneticDerived d = mf_derived(p, t);
  Eigen::Matrix4d a = Eigen::Matrix4d::Zero();
  a(0, 0) = p.m * d.local * d.local;
  a(1, 1) = 1.0 / p.m;
  a(2, 2) = p.m * d.local * d.local;
  a(3, 3) = 1.0 / p.m;
  // omega_b (p1 q2 - p2 q1)
  a(1, 2) = a(2, 1) = d.omega_b;
  a(0, 3) = a(3, 0) = -d.omega_b;
  return a;
}

DimerModes dimer_normal_modes(const DimerParams& p, double t) {
  const auto [g, dg] = p.g.eval(t);
  const auto [j, dj] = p.j.eval(t);
  const double g_sq = g * g;
  const double dg_sq = 2.0 * g * dg;
  DimerModes m;
  m.g1_sq = g_sq - j;
  m.g2_sq = g_sq + j;
  m.dg1_sq = dg_sq - dj;
  m.dg2_sq = dg_sq + dj;
  if (!(m.g1_sq < 1.0) || !(m.g2_sq < 1.0)) {
    throw ImaginaryFrequencyError("dimer mode softens (g_i^2 >= 1) at t = " + std::to_string(t));
  }
  m.omega1 = p.omega0 * (1.0 - 0.5 * m.g1_sq);
  m.omega2 = p.omega0 * (1.0 - 0.5 * m.g2_sq);
  return m;
}

SqueezedModeInfo diagonalize_squeezed(double omega0, double g_sq, double j_term) {
  if (!(g_sq < 1.0)) {
    throw ImaginaryFrequencyError("squeezed mode requires g_sq < 1, got " + std::to_string(g_sq));
  }
  const double one_minus = 1.0 - g_sq;
  SqueezedModeInfo info;
  info.r = -0.25 * std::log(one_minus);
  info.frequency = omega0 * std::sqrt(one_minus);
  info.ground_energy = 0.5 * omega0 * (std::sqrt(one_minus) - 1.0) + j_term;
  return info;
}

}  // namespace cdosc
