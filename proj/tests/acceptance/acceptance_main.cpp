// End-to-end checks of the numbered delivery contract.  Each criterion prints
// exactly one PASS/FAIL line; the process exit code is the number of failures.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cdosc/cd_control.hpp"
#include "cdosc/dynamics.hpp"
#include "cdosc/fock.hpp"
#include "cdosc/normal_modes.hpp"
#include "cdosc/observables.hpp"
#include "cdosc/verification.hpp"

using namespace cdosc;

namespace {

int g_failures = 0;

void report(int index, const std::string& label, bool pass, const std::string& detail) {
  std::printf("criterion %d: %-34s %s  (%s)\n", index, label.c_str(), pass ? "PASS" : "FAIL",
              detail.c_str());
  if (!pass) ++g_failures;
}

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3e", x);
  return buf;
}

DimerParams fig1_protocol(double tau) {
  DimerParams p;
  p.omega0 = 1.0;
  p.g = Schedule::linear_ramp(0.0, 0.2, tau);
  p.j = Schedule::constant(0.01);
  return p;
}

struct Fig1Run {
  std::vector<Trajectory> trajectories;  // none, mode1_only, both
  std::vector<std::vector<double>> er;   // residual energies per control
  double seconds = 0.0;
};

Fig1Run run_fig1() {
  const auto start = std::chrono::steady_clock::now();
  Fig1Run run;
  const DimerParams p = fig1_protocol(100.0);
  for (ControlMode control : {ControlMode::None, ControlMode::Mode1Only, ControlMode::Both}) {
    Trajectory traj = integrate(p, control, 0.0, 100.0, 1e-3, 100);
    std::vector<double> er(traj.times.size());
    for (size_t k = 0; k < traj.times.size(); ++k) {
      er[k] = residual_energy(traj.states[k], p, traj.times[k], control).e_r;
    }
    run.trajectories.push_back(std::move(traj));
    run.er.push_back(std::move(er));
  }
  run.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return run;
}

void criterion_1_and_2(const Fig1Run& run) {
  const std::vector<double>& none = run.er[0];
  const std::vector<double>& mode1 = run.er[1];
  const std::vector<double>& both = run.er[2];

  bool ordered = none.size() == mode1.size() && none.size() == both.size();
  const double slack = 1e-12;  // integrator-level tolerance on the ordering
  double max_none = 0.0;
  double max_both = 0.0;
  if (ordered) {
    for (size_t k = 0; k < none.size(); ++k) {
      if (both[k] > mode1[k] + slack || mode1[k] > none[k] + slack) {
        ordered = false;
        break;
      }
      max_none = std::max(max_none, none[k]);
      max_both = std::max(max_both, both[k]);
    }
  }
  const bool suppressed = max_both <= 0.1 * max_none;
  const bool fast = run.seconds <= 10.0;
  report(1, "driven-ramp suppression ordering", ordered && suppressed && fast,
         "max E_r both " + sci(max_both) + " vs none " + sci(max_none) + ", runtime " +
             sci(run.seconds) + " s");

  double drift = 0.0;
  for (const Trajectory& traj : run.trajectories) {
    drift = std::max(drift, traj.max_constraint_drift);
  }
  // 4th-order evidence lives where truncation dominates roundoff; at the
  // production step the defect already sits at the double-precision floor.
  const DimerParams p = fig1_protocol(100.0);
  const Trajectory coarse = integrate(p, ControlMode::Both, 0.0, 100.0, 0.01, 1000000);
  const Trajectory fine = integrate(p, ControlMode::Both, 0.0, 100.0, 0.005, 1000000);
  const double ratio = coarse.max_constraint_drift / fine.max_constraint_drift;
  report(2, "Bogoliubov constraint drift", drift <= 1e-8 && ratio >= 8.0,
         "production drift " + sci(drift) + ", halving ratio " + sci(ratio));
}

void criterion_3() {
  const auto start = std::chrono::steady_clock::now();
  const std::vector<CheckResult> results = run_verification(VerificationOptions{});
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  bool pass = seconds <= 60.0;
  double worst = 0.0;
  for (const CheckResult& r : results) {
    if (r.name.rfind("oracle-match-", 0) != 0) continue;
    pass = pass && r.passed;
    worst = std::max(worst, r.measured);
  }
  report(3, "truncated-basis oracle equivalence", pass,
         "worst deviation " + sci(worst) + " (tol 1e-5), runtime " + sci(seconds) + " s");
}

void criterion_4() {
  double worst = 0.0;
  const int samples = 101;
  // Relative deviation; a closed form that is exactly zero (e.g. smooth-ramp
  // endpoints) demands an exactly zero coefficient.
  auto absorb = [&worst](double got, double closed) {
    if (closed == 0.0) {
      worst = std::max(worst, got == 0.0 ? 0.0 : 1.0);
    } else {
      worst = std::max(worst, std::abs(got - closed) / std::abs(closed));
    }
  };

  PositionCouplingParams uncoupled;
  uncoupled.omega = Schedule::linear_ramp(1.0, 2.0, 10.0);
  uncoupled.gamma = Schedule::constant(0.0);
  for (int k = 0; k < samples; ++k) {
    const double t = 10.0 * k / (samples - 1);
    const CDCoefficients c = pp_cd_coefficients(uncoupled, t);
    const ScheduleSample omega = uncoupled.omega.eval(t);
    absorb(c.local, omega.derivative / (4.0 * omega.value));
    absorb(c.coupling, 0.0);
  }

  PositionCouplingParams const_gamma;
  const_gamma.m = 1.2;
  const_gamma.omega = Schedule::smooth_ramp(1.0, 1.8, 10.0);
  const_gamma.gamma = Schedule::constant(0.6);
  for (int k = 0; k < samples; ++k) {
    const double t = 10.0 * k / (samples - 1);
    const CDCoefficients c = pp_cd_coefficients(const_gamma, t);
    const ScheduleSample omega = const_gamma.omega.eval(t);
    const double m = const_gamma.m;
    const double gamma = 0.6;
    const double denom = std::pow(omega.value, 4) - gamma * gamma / (m * m);
    absorb(c.local, std::pow(omega.value, 3) * omega.derivative / (4.0 * denom));
    absorb(c.coupling, -omega.value * omega.derivative * gamma / (2.0 * m * denom));
  }

  PositionCouplingParams const_omega;
  const_omega.omega = Schedule::constant(1.0);
  const_omega.gamma = Schedule::smooth_ramp(0.2, 0.7, 10.0);
  for (int k = 0; k < samples; ++k) {
    const double t = 10.0 * k / (samples - 1);
    const CDCoefficients c = pp_cd_coefficients(const_omega, t);
    const ScheduleSample gamma = const_omega.gamma.eval(t);
    const double denom = 1.0 - gamma.value * gamma.value;  // m = omega = 1
    absorb(c.local, -gamma.value * gamma.derivative / (8.0 * denom));
    absorb(c.coupling, gamma.derivative / (4.0 * denom));
  }

  MagneticCouplingParams no_field;
  no_field.omega0 = Schedule::linear_ramp(1.0, 2.0, 10.0);
  no_field.omega_b = Schedule::constant(0.0);
  for (int k = 0; k < samples; ++k) {
    const double t = 10.0 * k / (samples - 1);
    const CDCoefficients c = mf_cd_coefficients(no_field, t);
    const ScheduleSample omega0 = no_field.omega0.eval(t);
    absorb(c.local, omega0.derivative / (4.0 * omega0.value));
    absorb(c.coupling, 0.0);
  }

  report(4, "decoupled-limit reductions", worst <= 1e-12, "worst deviation " + sci(worst));
}

void criterion_5() {
  double worst = 0.0;
  for (double g_sq : {0.01, 0.03, 0.05}) {
    for (int n_max : {20, 40}) {
      worst = std::max(worst, quadrature_identity_defect(g_sq, n_max));
    }
  }
  report(5, "dressed-quadrature identity", worst <= 1e-12, "worst defect " + sci(worst));
}

void criterion_6() {
  const int n_max = 48;
  std::mt19937 rng(987654321u);
  std::uniform_real_distribution<double> g_dist(0.0, 0.6);
  std::uniform_real_distribution<double> j_dist(-0.25, 0.25);
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    DimerParams p;
    p.omega0 = 1.0;
    p.g = Schedule::constant(g_dist(rng));
    p.j = Schedule::constant(j_dist(rng));
    const DimerModes m = dimer_normal_modes(p, 0.0);
    for (int mode_index : {1, 2}) {
      const ComplexMatrix h =
          dimer_mode_hamiltonian(p, 0.0, mode_index, ControlMode::None, n_max);
      const Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
      const double g_sq = mode_index == 1 ? m.g1_sq : m.g2_sq;
      const double j_term =
          (mode_index == 1 ? -0.25 : 0.25) * p.omega0 * p.j.eval(0.0).value;
      const double expected = diagonalize_squeezed(p.omega0, g_sq, j_term).ground_energy;
      worst = std::max(worst, std::abs(es.eigenvalues()(0) - expected));
    }
  }
  report(6, "ground-energy eigenvalue closure", worst <= 1e-8, "worst deviation " + sci(worst));
}

void criterion_7() {
  double worst = 0.0;
  auto absorb = [&](const SymplecticMap& map, const Eigen::Matrix4d& form,
                    const ModeFrequencies& freqs) {
    worst = std::max(worst, map.symplectic_defect());
    const Eigen::Matrix4d conj = map.matrix.transpose() * form * map.matrix;
    for (int r = 0; r < 4; ++r) {
      for (int c = 0; c < 4; ++c) {
        if (r != c) worst = std::max(worst, std::abs(conj(r, c)));
      }
    }
    const double f1 = std::sqrt(conj(0, 0) * conj(1, 1));
    const double f2 = std::sqrt(conj(2, 2) * conj(3, 3));
    worst = std::max(worst, std::abs(f1 - freqs.omega1) / freqs.omega1);
    worst = std::max(worst, std::abs(f2 - freqs.omega2) / freqs.omega2);
  };

  std::mt19937 rng(31415926u);
  std::uniform_real_distribution<double> m_dist(0.5, 2.0);
  std::uniform_real_distribution<double> omega_dist(0.6, 1.6);
  std::uniform_real_distribution<double> frac_dist(-0.6, 0.6);
  std::uniform_real_distribution<double> field_dist(0.1, 0.8);
  for (int k = 0; k < 10; ++k) {
    PositionCouplingParams p;
    p.m = m_dist(rng);
    const double omega = omega_dist(rng);
    p.omega = Schedule::constant(omega);
    p.gamma = Schedule::constant(frac_dist(rng) * p.m * omega * omega);
    absorb(pp_transform(), pp_hamiltonian_form(p, 0.0), pp_normal_frequencies(p, 0.0));

    MagneticCouplingParams q;
    q.m = m_dist(rng);
    q.omega0 = Schedule::constant(omega_dist(rng));
    q.omega_b = Schedule::constant(field_dist(rng));
    absorb(mf_transform(q, 0.0), mf_hamiltonian_form(q, 0.0), mf_normal_frequencies(q, 0.0));
  }
  report(7, "symplectic decoupling transforms", worst <= 1e-12, "worst defect " + sci(worst));
}

void criterion_8() {
  std::vector<double> finals;
  for (double tau : {10.0, 100.0, 1000.0}) {
    const DimerParams p = fig1_protocol(tau);
    const Trajectory traj =
        integrate(p, ControlMode::None, 0.0, tau, tau / 1e5, 1000000);
    finals.push_back(
        residual_energy(traj.states.back(), p, traj.times.back(), ControlMode::None).e_r);
  }
  const bool monotone = finals[0] > finals[1] && finals[1] > finals[2];

  // The control coefficients of a fixed ramp shape obey F(s tau) tau = const,
  // so rescaled traces across protocol durations must coincide pointwise.
  double scaling = 0.0;
  const DimerParams base = fig1_protocol(10.0);
  for (double tau : {100.0, 1000.0}) {
    const DimerParams p = fig1_protocol(tau);
    for (double s : {0.25, 0.5, 0.75, 1.0}) {
      const CDCoefficients ref = dimer_cd_coefficients(base, 10.0 * s);
      const CDCoefficients scaled = dimer_cd_coefficients(p, tau * s);
      scaling = std::max(scaling, std::abs(scaled.local * tau - ref.local * 10.0) /
                                      std::abs(ref.local * 10.0));
      scaling = std::max(scaling, std::abs(scaled.coupling * tau - ref.coupling * 10.0) /
                                      std::abs(ref.coupling * 10.0));
    }
  }
  report(8, "adiabatic trend and 1/tau control scaling", monotone && scaling <= 1e-12,
         "final E_r " + sci(finals[0]) + " > " + sci(finals[1]) + " > " + sci(finals[2]) +
             ", trace-scaling defect " + sci(scaling));
}

void criterion_9() {
  bool exact_ones = true;
  for (double omega : {0.3, 1.0, 2.7}) {
    exact_ones = exact_ones && adiabaticity_parameter(omega, 0.0) == 1.0;
  }
  std::mt19937 rng(271828u);
  std::uniform_real_distribution<double> omega_dist(0.4, 2.0);
  bool bounded = true;
  double min_q = 2.0;
  for (int k = 0; k < 200; ++k) {
    const double omega = omega_dist(rng);
    std::uniform_real_distribution<double> rate_dist(-1.99 * omega * omega,
                                                     1.99 * omega * omega);
    const double q = adiabaticity_parameter(omega, rate_dist(rng));
    bounded = bounded && q >= 1.0;
    min_q = std::min(min_q, q);
  }
  const double idle = mean_sta_energy({1.4, 1.0, 1.0, 1.0}, {0.9, 1.0, 1.0, 2.0});
  report(9, "adiabaticity-parameter contract", exact_ones && bounded && idle == 0.0,
         "min Q* " + sci(min_q) + ", idle-drive energy " + sci(idle));
}

}  // namespace

int main() {
  const Fig1Run run = run_fig1();
  criterion_1_and_2(run);
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  if (g_failures == 0) {
    std::printf("all 9 criteria passed\n");
  } else {
    std::printf("%d criteria FAILED\n", g_failures);
  }
  return g_failures;
}
