#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cdosc/dynamics.hpp"
#include "cdosc/observables.hpp"

namespace cdosc {

// Shortest decimal form of x that round-trips to the same double.  Output is
// locale-independent, so files rewritten from the same data are
// byte-identical.
std::string format_double(double x);

// One line of the per-mode residual summary; modes that were not simulated
// leave their cells empty.
struct CombinedRow {
  double t = 0.0;
  std::optional<double> e_r_none;
  std::optional<double> e_r_mode1;
  std::optional<double> e_r_both;
  double local = 0.0;     // symmetric control coefficient F
  double coupling = 0.0;  // antisymmetric control coefficient G
};

// Header: t,re_u1,im_u1,re_v1,im_v1,re_u2,im_u2,re_v2,im_v2,constraint1,constraint2
void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj);

// Header: t,e1,e2,eg1,eg2,e_r
void write_energies_csv(const std::filesystem::path& path, const std::vector<double>& times,
                        const std::vector<EnergyBreakdown>& rows);

// Header: t,e_r_none,e_r_mode1,e_r_both,F,G
void write_combined_csv(const std::filesystem::path& path, const std::vector<CombinedRow>& rows);

// Header: t,<name1>,<name2> (control-coefficient traces, e.g. F,G or M,N)
void write_traces_csv(const std::filesystem::path& path, const std::string& name1,
                      const std::string& name2, const std::vector<double>& times,
                      const std::vector<std::pair<double, double>>& values);

// Header: t,qstar1,qstar2 (adiabaticity figure per normal mode)
void write_qstar_csv(const std::filesystem::path& path, const std::vector<double>& times,
                     const std::vector<std::pair<double, double>>& values);

}  // namespace cdosc
