#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "cdosc/dynamics.hpp"
#include "cdosc/normal_modes.hpp"

namespace cdosc {

enum class ModelFamily { PositionCoupling, MagneticCoupling, Dimer };

// Config-file tokens: "pp", "mf", "dimer".
std::string family_token(ModelFamily family);
// Config-file tokens: "none", "mode1_only", "both".
std::string control_mode_token(ControlMode mode);

// A fully resolved scenario: which model family, its parameter block (only
// the block matching `family` is meaningful), and the run controls.
struct ScenarioConfig {
  ModelFamily family = ModelFamily::Dimer;
  PositionCouplingParams pp;
  MagneticCouplingParams mf;
  DimerParams dimer;
  double tau_q = 0.0;              // protocol duration; t runs over [0, tau_q]
  double dt = 0.0;                 // integrator step (default tau_q / 1e5)
  int stride = 100;                // output decimation
  std::vector<ControlMode> modes;  // dimer only; stored in canonical order
  std::string output = "output.csv";
};

// Parses the flat sectioned key=value format:
//   [model] family, plus omega0 (dimer) or m (pp, mf)
//   [schedule.<name>] kind, value0, value_f, tau_q
//   [run] dt, stride, modes, output
// Schema violations raise ParseError with the offending field path;
// invariant violations (including eager schedule checks on a 1000-point
// grid over [0, tau_q]) raise ValidationError naming the failed condition.
ScenarioConfig parse_config(const std::string& text);
ScenarioConfig load_config(const std::filesystem::path& path);

// Canonical form; parse(serialize(parse(text))) == parse(text).
std::string serialize_config(const ScenarioConfig& cfg);

struct RunSummary {
  std::vector<std::filesystem::path> files;   // everything written, in order
  double max_constraint_drift = 0.0;          // worst RK4 invariant defect seen
};

// Executes the scenario under output_dir.  Dimer: integrates each requested
// control mode, writing per-mode trajectory and energy CSVs plus the combined
// residual-energy summary.  pp/mf: writes the control-coefficient traces and
// the per-mode adiabaticity figure.  Any failure removes every file this call
// had already written before rethrowing.
RunSummary run_scenario(const ScenarioConfig& cfg, const std::filesystem::path& output_dir);

// Writes only the control-coefficient traces (F,G or M,N) for the scenario.
RunSummary write_coefficients(const ScenarioConfig& cfg,
                              const std::filesystem::path& output_dir);

}  // namespace cdosc
