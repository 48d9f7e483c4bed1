#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "cdosc/csv_io.hpp"
#include "cdosc/scenario.hpp"
#include "cdosc/verification.hpp"

namespace {

int run_scenario_command(const std::string& config_path, const std::string& output_dir,
                         int stride_override, bool coefficients_only) {
  cdosc::ScenarioConfig cfg = cdosc::load_config(config_path);
  if (stride_override > 0) {
    cfg.stride = stride_override;
  }
  const cdosc::RunSummary summary = coefficients_only
                                        ? cdosc::write_coefficients(cfg, output_dir)
                                        : cdosc::run_scenario(cfg, output_dir);
  for (const auto& file : summary.files) {
    std::cout << "wrote " << file.string() << '\n';
  }
  if (!coefficients_only && cfg.family == cdosc::ModelFamily::Dimer) {
    std::cout << "max constraint drift " << cdosc::format_double(summary.max_constraint_drift)
              << '\n';
  }
  return 0;
}

int run_verify_command(int n_max, bool flip_cd_sign) {
  cdosc::VerificationOptions opts;
  opts.n_max = n_max;
  opts.flip_cd_sign = flip_cd_sign;
  const std::vector<cdosc::CheckResult> results = cdosc::run_verification(opts);

  bool all_passed = true;
  for (const cdosc::CheckResult& r : results) {
    all_passed = all_passed && r.passed;
    std::printf("%-34s %s  measured %.3e  tolerance %.3e", r.name.c_str(),
                r.passed ? "PASS" : "FAIL", r.measured, r.tolerance);
    if (!r.detail.empty()) {
      std::printf("  (%s)", r.detail.c_str());
    }
    std::printf("\n");
  }
  std::printf("%s\n", all_passed ? "all checks passed" : "some checks FAILED");
  return all_passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Counterdiabatic driving of coupled harmonic-oscillator pairs"};
  app.require_subcommand(1);

  std::string config_path;
  std::string output_dir = ".";
  int stride_override = 0;

  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("config", config_path, "scenario config file")->required();
    cmd->add_option("--output-dir", output_dir, "directory for CSV outputs (default: .)");
    cmd->add_option("--stride", stride_override, "override the config output stride")
        ->check(CLI::PositiveNumber);
  };

  CLI::App* simulate =
      app.add_subcommand("simulate", "integrate the scenario and write its CSV outputs");
  add_common(simulate);
  CLI::App* coefficients =
      app.add_subcommand("coefficients", "write only the control-coefficient traces");
  add_common(coefficients);

  CLI::App* verify = app.add_subcommand("verify", "run the self-validation suite");
  int n_max = 40;
  bool flip_cd_sign = false;
  verify->add_option("--n-max", n_max, "Fock truncation of the reference evolution (default 40)");
  verify->add_flag("--flip-cd-sign", flip_cd_sign)->group("");  // diagnostic hook, hidden

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(simulate)) {
      return run_scenario_command(config_path, output_dir, stride_override, false);
    }
    if (app.got_subcommand(coefficients)) {
      return run_scenario_command(config_path, output_dir, stride_override, true);
    }
    return run_verify_command(n_max, flip_cd_sign);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
