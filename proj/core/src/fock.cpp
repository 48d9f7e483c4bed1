#include "cdosc/fock.hpp"

#include <cmath>
#include <string>

#include "cdosc/cd_control.hpp"
#include "cdosc/errors.hpp"

namespace cdosc {

namespace {

using complexd = std::complex<double>;
constexpr complexd kI{0.0, 1.0};

double one_norm(const ComplexMatrix& m) {
  return m.cwiseAbs().colwise().sum().maxCoeff();
}

// psi <- exp(-i H tau) psi by Taylor summation; converges fast for
// ||H|| tau <~ 1 (callers sub-step to stay in that regime).
void apply_step(const ComplexMatrix& h, double tau, ComplexVector& psi) {
  constexpr int kMaxTerms = 60;
  const double tol = 1e-18 * psi.norm();
  ComplexVector term = psi;
  ComplexVector acc = psi;
  for (int k = 1; k <= kMaxTerms; ++k) {
    term = (-kI * (tau / static_cast<double>(k))) * (h * term);
    acc += term;
    if (term.norm() <= tol) {
      psi = acc;
      return;
    }
  }
  throw AccuracyError("propagator series did not converge; reduce dt");
}

}  // namespace

ComplexMatrix annihilation_matrix(int n_max) {
  if (n_max < 2) {
    throw DomainError("Fock truncation needs n_max >= 2, got " + std::to_string(n_max));
  }
  ComplexMatrix a = ComplexMatrix::Zero(n_max, n_max);
  for (int n = 1; n < n_max; ++n) {
    a(n - 1, n) = std::sqrt(static_cast<double>(n));
  }
  return a;
}

ComplexMatrix matrix_exp(const ComplexMatrix& a) {
  constexpr int kMaxTerms = 120;
  int squarings = 0;
  double norm = one_norm(a);
  while (norm > 1.0) {
    norm *= 0.5;
    ++squarings;
  }
  const ComplexMatrix b = a / std::pow(2.0, squarings);
  ComplexMatrix term = ComplexMatrix::Identity(a.rows(), a.cols());
  ComplexMatrix sum = term;
  bool converged = false;
  for (int k = 1; k <= kMaxTerms; ++k) {
    term = (b * term) / static_cast<double>(k);
    sum += term;
    if (one_norm(term) <= 1e-18 * one_norm(sum)) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    throw AccuracyError("matrix exponential series did not converge");
  }
  for (int s = 0; s < squarings; ++s) {
    sum = sum * sum;
  }
  return sum;
}

ComplexMatrix squeeze_matrix(double r, int n_max) {
  const ComplexMatrix a = annihilation_matrix(n_max);
  const ComplexMatrix a2 = a * a;
  return matrix_exp(0.5 * r * (a2.adjoint() - a2));
}

ComplexMatrix dimer_mode_hamiltonian(const DimerParams& p, double t, int mode_index,
                                     ControlMode control, int n_max) {
  if (mode_index != 1 && mode_index != 2) {
    throw DomainError("mode_index must be 1 or 2, got " + std::to_string(mode_index));
  }
  const DimerModes m = dimer_normal_modes(p, t);
  const double g = p.g.eval(t).value;
  const double mode_omega = (mode_index == 1) ? m.omega1 : m.omega2;
  const double g_sq = (mode_index == 1) ? m.g1_sq : m.g2_sq;
  const double dg_sq = (mode_index == 1) ? m.dg1_sq : m.dg2_sq;
  const bool driven =
      (mode_index == 1) ? (control != ControlMode::None) : (control == ControlMode::Both);

  const ComplexMatrix a = annihilation_matrix(n_max);
  const ComplexMatrix a2 = a * a;
  const ComplexMatrix number = a.adjoint() * a;
  const ComplexMatrix identity = ComplexMatrix::Identity(n_max, n_max);

  ComplexMatrix h = mode_omega * number - 0.25 * p.omega0 * g_sq * (a2.adjoint() + a2) -
                    0.25 * p.omega0 * g * g * identity;
  if (driven) {
    const double mu = 0.5 * dimer_mode_cd(g_sq, dg_sq);  // dvarpi / (4 varpi)
    h += mu * kI * (a2 - a2.adjoint());
  }
  return h;
}

FockTrajectory evolve_schrodinger(const std::function<ComplexMatrix(double)>& hamiltonian,
                                  const ComplexVector& psi0, double t0, double t1, double dt,
                                  int stride, double norm_tol) {
  if (!(t1 > t0)) {
    throw DomainError("evolution span must have t1 > t0");
  }
  if (!(dt > 0.0)) {
    throw DomainError("evolution requires dt > 0");
  }
  if (stride < 1) {
    throw DomainError("output stride must be >= 1");
  }

  const double span = t1 - t0;
  const long long n_steps = std::max(1ll, std::llround(span / dt));
  const double h = span / static_cast<double>(n_steps);

  FockTrajectory traj;
  traj.dt = h;
  traj.times.reserve(static_cast<size_t>(n_steps / stride) + 2);
  traj.states.reserve(static_cast<size_t>(n_steps / stride) + 2);

  ComplexVector psi = psi0;
  traj.times.push_back(t0);
  traj.states.push_back(psi);

  for (long long i = 0; i < n_steps; ++i) {
    const double t = t0 + static_cast<double>(i) * h;
    const ComplexMatrix ht = hamiltonian(t + 0.5 * h);
    // Split so each Taylor application sees ||H|| tau <= 1/2.
    const int n_sub = std::max(1, static_cast<int>(std::ceil(one_norm(ht) * h / 0.5)));
    const double tau = h / static_cast<double>(n_sub);
    for (int s = 0; s < n_sub; ++s) {
      apply_step(ht, tau, psi);
    }

    const double drift = std::abs(psi.norm() - 1.0);
    traj.max_norm_drift = std::max(traj.max_norm_drift, drift);
    if (!(drift <= norm_tol)) {
      throw AccuracyError("state norm drifted to 1 + " + std::to_string(drift) +
                          " at t = " + std::to_string(t + h) + "; reduce dt");
    }

    const bool last = (i + 1 == n_steps);
    if (last || (i + 1) % stride == 0) {
      traj.times.push_back(last ? t1 : t0 + static_cast<double>(i + 1) * h);
      traj.states.push_back(psi);
    }
  }
  return traj;
}

double interior_max_abs(const ComplexMatrix& m, int margin) {
  const int rows = static_cast<int>(m.rows()) - margin;
  const int cols = static_cast<int>(m.cols()) - margin;
  if (rows <= 0 || cols <= 0) {
    throw DomainError("interior block is empty for margin " + std::to_string(margin));
  }
  return m.topLeftCorner(rows, cols).cwiseAbs().maxCoeff();
}

double hermiticity_defect(const ComplexMatrix& m) {
  return (m - ComplexMatrix(m.adjoint())).cwiseAbs().maxCoeff();
}

double quadrature_identity_defect(double g_sq, int n_max) {
  if (!(g_sq < 1.0)) {
    throw DomainError("dressed mode requires g_sq < 1, got " + std::to_string(g_sq));
  }
  const double q = std::pow(1.0 - g_sq, 0.25);
  const ComplexMatrix a = annihilation_matrix(n_max);
  const ComplexMatrix ad = a.adjoint();
  const ComplexMatrix b = 0.5 * ((ad + a) * q - (ad - a) / q);
  const ComplexMatrix b2 = b * b;
  const ComplexMatrix a2 = a * a;
  const ComplexMatrix defect = (b2 - b2.adjoint()) - (a2 - a2.adjoint());
  return interior_max_abs(defect, 2);
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

}  // namespace cdosc
