#include <benchmark/benchmark.h>

#include "cdosc/cd_control.hpp"
#include "cdosc/dynamics.hpp"
#include "cdosc/fock.hpp"
#include "cdosc/normal_modes.hpp"

namespace {

cdosc::DimerParams reference_ramp(double tau) {
  cdosc::DimerParams p;
  p.omega0 = 1.0;
  p.g = cdosc::Schedule::linear_ramp(0.0, 0.2, tau);
  p.j = cdosc::Schedule::constant(0.01);
  return p;
}

void BM_ScheduleEval(benchmark::State& state) {
  const cdosc::Schedule s = cdosc::Schedule::smooth_ramp(0.0, 0.2, 100.0);
  double t = 0.0;
  for (auto _ : state) {
    t += 1e-4;
    if (t > 100.0) t = 0.0;
    benchmark::DoNotOptimize(s.eval(t));
  }
}
BENCHMARK(BM_ScheduleEval);

void BM_ControlCoefficients(benchmark::State& state) {
  const cdosc::DimerParams p = reference_ramp(100.0);
  double t = 0.0;
  for (auto _ : state) {
    t += 1e-4;
    if (t > 100.0) t = 0.0;
    benchmark::DoNotOptimize(cdosc::dimer_cd_coefficients(p, t));
  }
}
BENCHMARK(BM_ControlCoefficients);

void BM_EquationsOfMotion(benchmark::State& state) {
  const cdosc::DimerParams p = reference_ramp(100.0);
  const cdosc::BogoliubovState s = cdosc::adiabatic_ground_state(p, 50.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cdosc::bogoliubov_rhs(s, 50.0, p, cdosc::ControlMode::Both));
  }
}
BENCHMARK(BM_EquationsOfMotion);

void BM_Integrate(benchmark::State& state) {
  const double tau = static_cast<double>(state.range(0));
  const cdosc::DimerParams p = reference_ramp(tau);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        cdosc::integrate(p, cdosc::ControlMode::Both, 0.0, tau, 1e-3, 1 << 30));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(tau * 1000));
}
BENCHMARK(BM_Integrate)->Arg(1)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_PropagatorStep(benchmark::State& state) {
  const int n_max = static_cast<int>(state.range(0));
  const cdosc::DimerParams p = reference_ramp(100.0);
  const cdosc::ComplexMatrix s0 = cdosc::squeeze_matrix(0.01, n_max);
  const cdosc::ComplexVector psi0 = s0.col(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cdosc::evolve_schrodinger(
        [&](double t) {
          return cdosc::dimer_mode_hamiltonian(p, t, 2, cdosc::ControlMode::Both, n_max);
        },
        psi0, 0.0, 1.0, 0.005, 1 << 30));
  }
  state.SetItemsProcessed(state.iterations() * 200);
}
BENCHMARK(BM_PropagatorStep)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
