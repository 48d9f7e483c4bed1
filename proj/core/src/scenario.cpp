#include "cdosc/scenario.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <system_error>
#include <utility>

#include "cdosc/cd_control.hpp"
#include "cdosc/csv_io.hpp"
#include "cdosc/errors.hpp"
#include "cdosc/observables.hpp"

namespace cdosc {

namespace {

using RawSection = std::map<std::string, std::string>;
using RawConfig = std::map<std::string, RawSection>;

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) {
    return {};
  }
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

RawConfig tokenize(const std::string& text) {
  RawConfig out;
  std::string current;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) {
      line.erase(hash);
    }
    const std::string s = trim(line);
    if (s.empty()) {
      continue;
    }
    if (s.front() == '[') {
      if (s.back() != ']') {
        throw ParseError("line " + std::to_string(lineno) + ": malformed section header '" + s +
                         "'");
      }
      const std::string name = trim(s.substr(1, s.size() - 2));
      if (name.empty()) {
        throw ParseError("line " + std::to_string(lineno) + ": empty section name");
      }
      if (out.count(name) != 0) {
        throw ParseError("duplicate section [" + name + "]");
      }
      out[name];
      current = name;
    } else {
      const auto eq = s.find('=');
      if (eq == std::string::npos) {
        throw ParseError("line " + std::to_string(lineno) + ": expected key = value, got '" + s +
                         "'");
      }
      if (current.empty()) {
        throw ParseError("line " + std::to_string(lineno) + ": key outside any section");
      }
      const std::string key = trim(s.substr(0, eq));
      const std::string value = trim(s.substr(eq + 1));
      if (key.empty()) {
        throw ParseError("line " + std::to_string(lineno) + ": empty key");
      }
      RawSection& sec = out[current];
      if (sec.count(key) != 0) {
        throw ParseError(current + "." + key + ": duplicate key");
      }
      sec[key] = value;
    }
  }
  return out;
}

double parse_real(const std::string& path, const std::string& raw) {
  std::string s = trim(raw);
  if (!s.empty() && s.front() == '+') {
    s.erase(0, 1);
  }
  double out = 0.0;
  const char* end = s.data() + s.size();
  const auto res = std::from_chars(s.data(), end, out);
  if (s.empty() || res.ec != std::errc() || res.ptr != end) {
    throw ParseError(path + ": expected a real number, got '" + raw + "'");
  }
  return out;
}

int parse_positive_int(const std::string& path, const std::string& raw) {
  const std::string s = trim(raw);
  int out = 0;
  const char* end = s.data() + s.size();
  const auto res = std::from_chars(s.data(), end, out);
  if (s.empty() || res.ec != std::errc() || res.ptr != end) {
    throw ParseError(path + ": expected an integer, got '" + raw + "'");
  }
  if (out < 1) {
    throw ValidationError(path + " must be >= 1, got " + s);
  }
  return out;
}

// A section with take/require semantics; finish() rejects leftovers so
// misspelled keys surface as errors instead of being silently ignored.
class SectionReader {
 public:
  SectionReader(std::string name, RawSection* entries)
      : name_(std::move(name)), entries_(entries) {}

  std::optional<std::string> take(const std::string& key) {
    if (entries_ == nullptr) {
      return std::nullopt;
    }
    const auto it = entries_->find(key);
    if (it == entries_->end()) {
      return std::nullopt;
    }
    std::string value = it->second;
    entries_->erase(it);
    return value;
  }

  std::string require(const std::string& key) {
    auto value = take(key);
    if (!value) {
      throw ParseError(name_ + "." + key + ": missing required key");
    }
    return *value;
  }

  void finish() {
    if (entries_ != nullptr && !entries_->empty()) {
      throw ParseError(name_ + "." + entries_->begin()->first + ": unknown key");
    }
  }

 private:
  std::string name_;
  RawSection* entries_;
};

std::string canonical_kind(const std::string& section, const std::string& raw) {
  if (raw == "constant") {
    return "constant";
  }
  if (raw == "linear-ramp" || raw == "linear_ramp") {
    return "linear-ramp";
  }
  if (raw == "smooth-ramp" || raw == "smooth_ramp") {
    return "smooth-ramp";
  }
  throw ParseError(section + ".kind: unknown kind '" + raw + "'");
}

// Parses one [schedule.<name>] section if present (falling back to `fallback`
// otherwise) and records any tau_q it declares for the agreement check.
Schedule parse_schedule(const std::string& section, RawConfig& raw, const Schedule& fallback,
                        std::vector<std::pair<std::string, double>>& taus) {
  const auto it = raw.find(section);
  if (it == raw.end()) {
    return fallback;
  }
  SectionReader r(section, &it->second);
  const std::string kind = canonical_kind(section, r.require("kind"));
  const double value0 = parse_real(section + ".value0", r.require("value0"));

  Schedule sched = fallback;
  if (kind == "constant") {
    if (r.take("value_f")) {
      throw ParseError(section + ".value_f: not allowed for kind=constant");
    }
    if (auto tq = r.take("tau_q")) {
      taus.emplace_back(section, parse_real(section + ".tau_q", *tq));
    }
    sched = Schedule::constant(value0);
  } else {
    const double value_f = parse_real(section + ".value_f", r.require("value_f"));
    const double tau_q = parse_real(section + ".tau_q", r.require("tau_q"));
    taus.emplace_back(section, tau_q);
    try {
      sched = (kind == "linear-ramp") ? Schedule::linear_ramp(value0, value_f, tau_q)
                                      : Schedule::smooth_ramp(value0, value_f, tau_q);
    } catch (const DomainError& e) {
      throw ValidationError(section + ": " + std::string(e.what()));
    }
  }
  r.finish();
  raw.erase(it);
  return sched;
}

ControlMode parse_control_mode(const std::string& token) {
  if (token == "none") {
    return ControlMode::None;
  }
  if (token == "mode1_only") {
    return ControlMode::Mode1Only;
  }
  if (token == "both") {
    return ControlMode::Both;
  }
  throw ParseError("run.modes: unknown mode '" + token + "'");
}

std::vector<ControlMode> parse_modes(const std::string& raw) {
  std::vector<ControlMode> seen;
  std::stringstream in(raw);
  std::string token;
  while (std::getline(in, token, ',')) {
    const std::string t = trim(token);
    if (t.empty()) {
      throw ParseError("run.modes: empty entry in '" + raw + "'");
    }
    const ControlMode mode = parse_control_mode(t);
    if (std::find(seen.begin(), seen.end(), mode) != seen.end()) {
      throw ParseError("run.modes: duplicate mode '" + t + "'");
    }
    seen.push_back(mode);
  }
  if (seen.empty()) {
    throw ParseError("run.modes: empty list");
  }
  // Canonical storage order, independent of how the config listed them.
  std::vector<ControlMode> out;
  for (ControlMode mode : {ControlMode::None, ControlMode::Mode1Only, ControlMode::Both}) {
    if (std::find(seen.begin(), seen.end(), mode) != seen.end()) {
      out.push_back(mode);
    }
  }
  return out;
}

void validate_on_grid(const ScenarioConfig& cfg) {
  constexpr int kGridIntervals = 1000;
  for (int k = 0; k <= kGridIntervals; ++k) {
    const double t = cfg.tau_q * (static_cast<double>(k) / kGridIntervals);
    try {
      switch (cfg.family) {
        case ModelFamily::Dimer:
          dimer_normal_modes(cfg.dimer, t);
          break;
        case ModelFamily::PositionCoupling:
          pp_normal_frequencies(cfg.pp, t);
          break;
        case ModelFamily::MagneticCoupling:
          mf_normal_frequencies(cfg.mf, t);
          break;
      }
    } catch (const std::exception& e) {
      throw ValidationError("schedule invariant fails at t = " + format_double(t) + ": " +
                            e.what());
    }
  }
}

// Output grid of integrate(): t0, every stride-th step time, and t1.
std::vector<double> sample_times(double t0, double t1, double dt, int stride) {
  const double span = t1 - t0;
  const long long n_steps = std::max(1ll, std::llround(span / dt));
  const double h = span / static_cast<double>(n_steps);
  std::vector<double> out{t0};
  for (long long i = 1; i <= n_steps; ++i) {
    if (i == n_steps) {
      out.push_back(t1);
    } else if (i % stride == 0) {
      out.push_back(t0 + static_cast<double>(i) * h);
    }
  }
  return out;
}

void emit_schedule(std::ostream& out, const std::string& name, const Schedule& s, double tau_q) {
  out << "[schedule." << name << "]\n";
  out << "kind = ";
  switch (s.kind()) {
    case ScheduleKind::Constant:
      out << "constant";
      break;
    case ScheduleKind::LinearRamp:
      out << "linear-ramp";
      break;
    case ScheduleKind::SmoothRamp:
      out << "smooth-ramp";
      break;
  }
  out << "\nvalue0 = " << format_double(s.value0()) << '\n';
  if (s.kind() != ScheduleKind::Constant) {
    out << "value_f = " << format_double(s.value_f()) << '\n';
  }
  out << "tau_q = " << format_double(tau_q) << "\n\n";
}

struct OutputLayout {
  std::filesystem::path dir;   // directory every file goes into
  std::string stem;            // base name without extension
  std::filesystem::path main;  // the path named by cfg.output
};

OutputLayout resolve_layout(const ScenarioConfig& cfg, const std::filesystem::path& output_dir) {
  const std::filesystem::path base = output_dir / cfg.output;
  OutputLayout layout;
  layout.dir = base.parent_path();
  layout.stem = base.stem().string();
  layout.main = base;
  std::filesystem::create_directories(layout.dir);
  return layout;
}

void run_dimer(const ScenarioConfig& cfg, const OutputLayout& layout, RunSummary& summary) {
  std::vector<double> times;
  std::array<std::optional<std::vector<double>>, 3> er_columns;

  for (ControlMode mode : {ControlMode::None, ControlMode::Mode1Only, ControlMode::Both}) {
    if (std::find(cfg.modes.begin(), cfg.modes.end(), mode) == cfg.modes.end()) {
      continue;
    }
    const Trajectory traj = integrate(cfg.dimer, mode, 0.0, cfg.tau_q, cfg.dt, cfg.stride);
    summary.max_constraint_drift =
        std::max(summary.max_constraint_drift, traj.max_constraint_drift);

    std::vector<EnergyBreakdown> energies;
    std::vector<double> er;
    energies.reserve(traj.times.size());
    er.reserve(traj.times.size());
    for (size_t i = 0; i < traj.times.size(); ++i) {
      energies.push_back(residual_energy(traj.states[i], cfg.dimer, traj.times[i], mode));
      er.push_back(energies.back().e_r);
    }

    const std::string token = control_mode_token(mode);
    const auto traj_path = layout.dir / (layout.stem + "_trajectory_" + token + ".csv");
    write_trajectory_csv(traj_path, traj);
    summary.files.push_back(traj_path);
    const auto energies_path = layout.dir / (layout.stem + "_energies_" + token + ".csv");
    write_energies_csv(energies_path, traj.times, energies);
    summary.files.push_back(energies_path);

    if (times.empty()) {
      times = traj.times;
    }
    er_columns[static_cast<size_t>(mode)] = std::move(er);
  }

  std::vector<CombinedRow> combined;
  combined.reserve(times.size());
  for (size_t i = 0; i < times.size(); ++i) {
    const CDCoefficients c = dimer_cd_coefficients(cfg.dimer, times[i]);
    CombinedRow row;
    row.t = times[i];
    row.local = c.local;
    row.coupling = c.coupling;
    const auto pick = [&](ControlMode mode) -> std::optional<double> {
      const auto& column = er_columns[static_cast<size_t>(mode)];
      return column ? std::optional<double>((*column)[i]) : std::nullopt;
    };
    row.e_r_none = pick(ControlMode::None);
    row.e_r_mode1 = pick(ControlMode::Mode1Only);
    row.e_r_both = pick(ControlMode::Both);
    combined.push_back(row);
  }
  write_combined_csv(layout.main, combined);
  summary.files.push_back(layout.main);
}

void run_traces(const ScenarioConfig& cfg, const OutputLayout& layout, RunSummary& summary) {
  const std::vector<double> times = sample_times(0.0, cfg.tau_q, cfg.dt, cfg.stride);
  const bool pp = cfg.family == ModelFamily::PositionCoupling;

  std::vector<std::pair<double, double>> traces;
  std::vector<std::pair<double, double>> qstar;
  traces.reserve(times.size());
  qstar.reserve(times.size());
  for (double t : times) {
    const CDCoefficients c = pp ? pp_cd_coefficients(cfg.pp, t) : mf_cd_coefficients(cfg.mf, t);
    traces.emplace_back(c.local, c.coupling);
    const ModeFrequencies f =
        pp ? pp_normal_frequencies(cfg.pp, t) : mf_normal_frequencies(cfg.mf, t);
    qstar.emplace_back(adiabaticity_parameter(f.omega1, f.domega1),
                       adiabaticity_parameter(f.omega2, f.domega2));
  }

  write_traces_csv(layout.main, pp ? "F" : "M", pp ? "G" : "N", times, traces);
  summary.files.push_back(layout.main);
  const auto qstar_path = layout.dir / (layout.stem + "_qstar.csv");
  write_qstar_csv(qstar_path, times, qstar);
  summary.files.push_back(qstar_path);
}

void remove_outputs(const RunSummary& summary) {
  for (const auto& path : summary.files) {
    std::error_code ec;
    std::filesystem::remove(path, ec);
  }
}

}  // namespace

std::string family_token(ModelFamily family) {
  switch (family) {
    case ModelFamily::PositionCoupling:
      return "pp";
    case ModelFamily::MagneticCoupling:
      return "mf";
    case ModelFamily::Dimer:
      return "dimer";
  }
  throw DomainError("unknown model family");
}

std::string control_mode_token(ControlMode mode) {
  switch (mode) {
    case ControlMode::None:
      return "none";
    case ControlMode::Mode1Only:
      return "mode1_only";
    case ControlMode::Both:
      return "both";
  }
  throw DomainError("unknown control mode");
}

ScenarioConfig parse_config(const std::string& text) {
  RawConfig raw = tokenize(text);

  const auto model_it = raw.find("model");
  if (model_it == raw.end()) {
    throw ParseError("missing required section [model]");
  }
  SectionReader model("model", &model_it->second);

  ScenarioConfig cfg;
  const std::string family = model.require("family");
  std::vector<std::pair<std::string, double>> taus;
  if (family == "dimer") {
    cfg.family = ModelFamily::Dimer;
    if (auto v = model.take("omega0")) {
      cfg.dimer.omega0 = parse_real("model.omega0", *v);
    }
    if (!(cfg.dimer.omega0 > 0.0)) {
      throw ValidationError("model.omega0 must be > 0");
    }
    cfg.dimer.g = parse_schedule("schedule.g", raw, cfg.dimer.g, taus);
    cfg.dimer.j = parse_schedule("schedule.J", raw, cfg.dimer.j, taus);
  } else if (family == "pp") {
    cfg.family = ModelFamily::PositionCoupling;
    if (auto v = model.take("m")) {
      cfg.pp.m = parse_real("model.m", *v);
    }
    if (!(cfg.pp.m > 0.0)) {
      throw ValidationError("model.m must be > 0");
    }
    cfg.pp.omega = parse_schedule("schedule.omega", raw, cfg.pp.omega, taus);
    cfg.pp.gamma = parse_schedule("schedule.gamma", raw, cfg.pp.gamma, taus);
  } else if (family == "mf") {
    cfg.family = ModelFamily::MagneticCoupling;
    if (auto v = model.take("m")) {
      cfg.mf.m = parse_real("model.m", *v);
    }
    if (!(cfg.mf.m > 0.0)) {
      throw ValidationError("model.m must be > 0");
    }
    cfg.mf.omega0 = parse_schedule("schedule.omega0", raw, cfg.mf.omega0, taus);
    cfg.mf.omega_b = parse_schedule("schedule.omega_b", raw, cfg.mf.omega_b, taus);
  } else {
    throw ParseError("model.family: unknown family '" + family + "'");
  }
  model.finish();
  raw.erase(model_it);

  if (taus.empty()) {
    throw ValidationError("no schedule declares tau_q; at least one section must set it");
  }
  cfg.tau_q = taus.front().second;
  for (const auto& [section, tau] : taus) {
    if (tau != cfg.tau_q) {
      throw ValidationError("tau_q mismatch: " + taus.front().first + " = " +
                            format_double(cfg.tau_q) + " but " + section + " = " +
                            format_double(tau));
    }
  }
  if (!(cfg.tau_q > 0.0)) {
    throw ValidationError("tau_q must be > 0");
  }

  const auto run_it = raw.find("run");
  SectionReader run("run", run_it == raw.end() ? nullptr : &run_it->second);
  if (auto v = run.take("dt")) {
    cfg.dt = parse_real("run.dt", *v);
  } else {
    cfg.dt = cfg.tau_q / 1e5;
  }
  if (auto v = run.take("stride")) {
    cfg.stride = parse_positive_int("run.stride", *v);
  }
  const auto modes_raw = run.take("modes");
  if (cfg.family == ModelFamily::Dimer) {
    cfg.modes = modes_raw ? parse_modes(*modes_raw)
                          : std::vector<ControlMode>{ControlMode::None, ControlMode::Mode1Only,
                                                     ControlMode::Both};
  } else if (modes_raw) {
    throw ParseError("run.modes: only meaningful for family=dimer");
  }
  if (auto v = run.take("output")) {
    if (v->empty()) {
      throw ParseError("run.output: empty path");
    }
    cfg.output = *v;
  }
  run.finish();
  if (run_it != raw.end()) {
    raw.erase(run_it);
  }

  if (!raw.empty()) {
    throw ParseError("unknown section [" + raw.begin()->first + "]");
  }

  if (!(cfg.dt > 0.0)) {
    throw ValidationError("run.dt must be > 0");
  }
  if (!(cfg.dt <= cfg.tau_q / 1000.0)) {
    throw ValidationError("run.dt must satisfy dt <= tau_q/1000 (got dt = " +
                          format_double(cfg.dt) + ", tau_q = " + format_double(cfg.tau_q) + ")");
  }

  validate_on_grid(cfg);
  return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ParseError("cannot read config file " + path.string());
  }
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

std::string serialize_config(const ScenarioConfig& cfg) {
  std::ostringstream out;
  out << "[model]\nfamily = " << family_token(cfg.family) << '\n';
  switch (cfg.family) {
    case ModelFamily::Dimer:
      out << "omega0 = " << format_double(cfg.dimer.omega0) << "\n\n";
      emit_schedule(out, "g", cfg.dimer.g, cfg.tau_q);
      emit_schedule(out, "J", cfg.dimer.j, cfg.tau_q);
      break;
    case ModelFamily::PositionCoupling:
      out << "m = " << format_double(cfg.pp.m) << "\n\n";
      emit_schedule(out, "omega", cfg.pp.omega, cfg.tau_q);
      emit_schedule(out, "gamma", cfg.pp.gamma, cfg.tau_q);
      break;
    case ModelFamily::MagneticCoupling:
      out << "m = " << format_double(cfg.mf.m) << "\n\n";
      emit_schedule(out, "omega0", cfg.mf.omega0, cfg.tau_q);
      emit_schedule(out, "omega_b", cfg.mf.omega_b, cfg.tau_q);
      break;
  }
  out << "[run]\ndt = " << format_double(cfg.dt) << "\nstride = " << cfg.stride << '\n';
  if (cfg.family == ModelFamily::Dimer) {
    out << "modes = ";
    for (size_t i = 0; i < cfg.modes.size(); ++i) {
      out << (i > 0 ? "," : "") << control_mode_token(cfg.modes[i]);
    }
    out << '\n';
  }
  out << "output = " << cfg.output << '\n';
  return out.str();
}

RunSummary run_scenario(const ScenarioConfig& cfg, const std::filesystem::path& output_dir) {
  const OutputLayout layout = resolve_layout(cfg, output_dir);
  RunSummary summary;
  try {
    if (cfg.family == ModelFamily::Dimer) {
      run_dimer(cfg, layout, summary);
    } else {
      run_traces(cfg, layout, summary);
    }
  } catch (...) {
    remove_outputs(summary);
    throw;
  }
  return summary;
}

RunSummary write_coefficients(const ScenarioConfig& cfg,
                              const std::filesystem::path& output_dir) {
  const OutputLayout layout = resolve_layout(cfg, output_dir);
  RunSummary summary;
  try {
    const std::vector<double> times = sample_times(0.0, cfg.tau_q, cfg.dt, cfg.stride);
    std::vector<std::pair<double, double>> traces;
    traces.reserve(times.size());
    for (double t : times) {
      CDCoefficients c;
      switch (cfg.family) {
        case ModelFamily::Dimer:
          c = dimer_cd_coefficients(cfg.dimer, t);
          break;
        case ModelFamily::PositionCoupling:
          c = pp_cd_coefficients(cfg.pp, t);
          break;
        case ModelFamily::MagneticCoupling:
          c = mf_cd_coefficients(cfg.mf, t);
          break;
      }
      traces.emplace_back(c.local, c.coupling);
    }
    const bool mf = cfg.family == ModelFamily::MagneticCoupling;
    const auto path = layout.dir / (layout.stem + "_coefficients.csv");
    write_traces_csv(path, mf ? "M" : "F", mf ? "N" : "G", times, traces);
    summary.files.push_back(path);
  } catch (...) {
    remove_outputs(summary);
    throw;
  }
  return summary;
}

}  // namespace cdosc
