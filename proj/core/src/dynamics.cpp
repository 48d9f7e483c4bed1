#include "cdosc/dynamics.hpp"

#include <cmath>
#include <string>

#include "cdosc/cd_control.hpp"
#include "cdosc/errors.hpp"

namespace cdosc {

namespace {

using complexd = std::complex<double>;
constexpr complexd kI{0.0, 1.0};

struct ModeRates {
  complexd du;
  complexd dv;
};

// One collective mode: i du = omega0[(1 - g_sq/2) u - (g_sq/2) v] - i cd v.
ModeRates mode_rates(complexd u, complexd v, double omega0, double g_sq, double dg_sq,
                     bool driven) {
  const double diag = omega0 * (1.0 - 0.5 * g_sq);
  const double offd = omega0 * 0.5 * g_sq;
  const double cd = driven ? dimer_mode_cd(g_sq, dg_sq) : 0.0;
  ModeRates r;
  r.du = -kI * (diag * u - offd * v) - cd * v;
  r.dv = kI * (diag * v - offd * u) - cd * u;
  return r;
}

BogoliubovState scaled_sum(const BogoliubovState& s, double h, const BogoliubovState& k) {
  BogoliubovState out;
  out.u1 = s.u1 + h * k.u1;
  out.v1 = s.v1 + h * k.v1;
  out.u2 = s.u2 + h * k.u2;
  out.v2 = s.v2 + h * k.v2;
  return out;
}

}  // namespace

double constraint_defect(complexd u, complexd v) {
  return std::norm(u) - std::norm(v) - 1.0;
}

BogoliubovState bogoliubov_rhs(const BogoliubovState& s, double t, const DimerParams& p,
                               ControlMode control) {
  const DimerModes m = dimer_normal_modes(p, t);
  const bool drive1 = control != ControlMode::None;
  const bool drive2 = control == ControlMode::Both;
  const ModeRates r1 = mode_rates(s.u1, s.v1, p.omega0, m.g1_sq, m.dg1_sq, drive1);
  const ModeRates r2 = mode_rates(s.u2, s.v2, p.omega0, m.g2_sq, m.dg2_sq, drive2);
  BogoliubovState ds;
  ds.u1 = r1.du;
  ds.v1 = r1.dv;
  ds.u2 = r2.du;
  ds.v2 = r2.dv;
  return ds;
}

BogoliubovState adiabatic_ground_state(const DimerParams& p, double t) {
  const DimerModes m = dimer_normal_modes(p, t);
  const double r1 = diagonalize_squeezed(p.omega0, m.g1_sq, 0.0).r;
  const double r2 = diagonalize_squeezed(p.omega0, m.g2_sq, 0.0).r;
  BogoliubovState s;
  s.u1 = std::cosh(r1);
  s.v1 = std::sinh(r1);
  s.u2 = std::cosh(r2);
  s.v2 = std::sinh(r2);
  return s;
}

Trajectory integrate(const DimerParams& p, ControlMode control, double t0, double t1, double dt,
                     int stride, std::optional<BogoliubovState> initial, double drift_tol) {
  if (!(t1 > t0)) {
    throw DomainError("integration span must have t1 > t0");
  }
  if (!(dt > 0.0)) {
    throw DomainError("integration requires dt > 0");
  }
  if (stride < 1) {
    throw DomainError("output stride must be >= 1");
  }

  const double span = t1 - t0;
  const long long n_steps = std::max(1ll, std::llround(span / dt));
  const double h = span / static_cast<double>(n_steps);

  Trajectory traj;
  traj.dt = h;
  traj.times.reserve(static_cast<size_t>(n_steps / stride) + 2);
  traj.states.reserve(static_cast<size_t>(n_steps / stride) + 2);

  BogoliubovState y = initial ? *initial : adiabatic_ground_state(p, t0);
  traj.times.push_back(t0);
  traj.states.push_back(y);

  for (long long i = 0; i < n_steps; ++i) {
    const double t = t0 + static_cast<double>(i) * h;
    const BogoliubovState k1 = bogoliubov_rhs(y, t, p, control);
    const BogoliubovState k2 = bogoliubov_rhs(scaled_sum(y, 0.5 * h, k1), t + 0.5 * h, p, control);
    const BogoliubovState k3 = bogoliubov_rhs(scaled_sum(y, 0.5 * h, k2), t + 0.5 * h, p, control);
    const BogoliubovState k4 = bogoliubov_rhs(scaled_sum(y, h, k3), t + h, p, control);

    y.u1 += (h / 6.0) * (k1.u1 + 2.0 * k2.u1 + 2.0 * k3.u1 + k4.u1);
    y.v1 += (h / 6.0) * (k1.v1 + 2.0 * k2.v1 + 2.0 * k3.v1 + k4.v1);
    y.u2 += (h / 6.0) * (k1.u2 + 2.0 * k2.u2 + 2.0 * k3.u2 + k4.u2);
    y.v2 += (h / 6.0) * (k1.v2 + 2.0 * k2.v2 + 2.0 * k3.v2 + k4.v2);

    const double defect = std::max(std::abs(constraint_defect(y.u1, y.v1)),
                                   std::abs(constraint_defect(y.u2, y.v2)));
    traj.max_constraint_drift = std::max(traj.max_constraint_drift, defect);
    if (!(defect <= drift_tol)) {
      throw AccuracyError("Bogoliubov constraint drifted to " + std::to_string(defect) +
                          " at t = " + std::to_string(t + h) + "; reduce dt");
    }

    const bool last = (i + 1 == n_steps);
    if (last || (i + 1) % stride == 0) {
      // Recompute the grid time from the index to keep output times exact.
      traj.times.push_back(last ? t1 : t0 + static_cast<double>(i + 1) * h);
      traj.states.push_back(y);
    }
  }
  return traj;
}

}  // namespace cdosc
