#include "cdosc/csv_io.hpp"

#include <charconv>
#include <fstream>
#include <system_error>

#include "cdosc/errors.hpp"

namespace cdosc {

namespace {

// Writes through a temporary file and renames on success, so a crash or
// exception never leaves a half-written CSV behind.
class AtomicFile {
 public:
  explicit AtomicFile(const std::filesystem::path& path)
      : path_(path), tmp_(path.string() + ".tmp"), out_(tmp_, std::ios::binary | std::ios::trunc) {
    if (!out_) {
      throw std::runtime_error("cannot open " + tmp_.string() + " for writing");
    }
  }

  ~AtomicFile() {
    if (!committed_) {
      out_.close();
      std::error_code ec;
      std::filesystem::remove(tmp_, ec);
    }
  }

  std::ofstream& stream() { return out_; }

  void commit() {
    out_.flush();
    if (!out_) {
      throw std::runtime_error("write to " + tmp_.string() + " failed");
    }
    out_.close();
    std::filesystem::rename(tmp_, path_);
    committed_ = true;
  }

 private:
  std::filesystem::path path_;
  std::filesystem::path tmp_;
  std::ofstream out_;
  bool committed_ = false;
};

std::string cell(std::optional<double> x) {
  return x ? format_double(*x) : std::string();
}

}  // namespace

std::string format_double(double x) {
  char buf[32];
  const std::to_chars_result res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj) {
  AtomicFile file(path);
  auto& out = file.stream();
  out << "t,re_u1,im_u1,re_v1,im_v1,re_u2,im_u2,re_v2,im_v2,constraint1,constraint2\n";
  for (size_t i = 0; i < traj.times.size(); ++i) {
    const BogoliubovState& s = traj.states[i];
    out << format_double(traj.times[i]) << ',' << format_double(s.u1.real()) << ','
        << format_double(s.u1.imag()) << ',' << format_double(s.v1.real()) << ','
        << format_double(s.v1.imag()) << ',' << format_double(s.u2.real()) << ','
        << format_double(s.u2.imag()) << ',' << format_double(s.v2.real()) << ','
        << format_double(s.v2.imag()) << ',' << format_double(constraint_defect(s.u1, s.v1))
        << ',' << format_double(constraint_defect(s.u2, s.v2)) << '\n';
  }
  file.commit();
}

void write_energies_csv(const std::filesystem::path& path, const std::vector<double>& times,
                        const std::vector<EnergyBreakdown>& rows) {
  if (times.size() != rows.size()) {
    throw std::invalid_argument("energies: times and rows differ in length");
  }
  AtomicFile file(path);
  auto& out = file.stream();
  out << "t,e1,e2,eg1,eg2,e_r\n";
  for (size_t i = 0; i < times.size(); ++i) {
    const EnergyBreakdown& r = rows[i];
    out << format_double(times[i]) << ',' << format_double(r.e1) << ',' << format_double(r.e2)
        << ',' << format_double(r.eg1) << ',' << format_double(r.eg2) << ','
        << format_double(r.e_r) << '\n';
  }
  file.commit();
}

void write_combined_csv(const std::filesystem::path& path, const std::vector<CombinedRow>& rows) {
  AtomicFile file(path);
  auto& out = file.stream();
  out << "t,e_r_none,e_r_mode1,e_r_both,F,G\n";
  for (const CombinedRow& r : rows) {
    out << format_double(r.t) << ',' << cell(r.e_r_none) << ',' << cell(r.e_r_mode1) << ','
        << cell(r.e_r_both) << ',' << format_double(r.local) << ',' << format_double(r.coupling)
        << '\n';
  }
  file.commit();
}

void write_traces_csv(const std::filesystem::path& path, const std::string& name1,
                      const std::string& name2, const std::vector<double>& times,
                      const std::vector<std::pair<double, double>>& values) {
  if (times.size() != values.size()) {
    throw std::invalid_argument("traces: times and values differ in length");
  }
  AtomicFile file(path);
  auto& out = file.stream();
  out << "t," << name1 << ',' << name2 << '\n';
  for (size_t i = 0; i < times.size(); ++i) {
    out << format_double(times[i]) << ',' << format_double(values[i].first) << ','
        << format_double(values[i].second) << '\n';
  }
  file.commit();
}

void write_qstar_csv(const std::filesystem::path& path, const std::vector<double>& times,
                     const std::vector<std::pair<double, double>>& values) {
  if (times.size() != values.size()) {
    throw std::invalid_argument("qstar: times and values differ in length");
  }
  AtomicFile file(path);
  auto& out = file.stream();
  out << "t,qstar1,qstar2\n";
  for (size_t i = 0; i < times.size(); ++i) {
    out << format_double(times[i]) << ',' << format_double(values[i].first) << ','
        << format_double(values[i].second) << '\n';
  }
  file.commit();
}

}  // namespace cdosc
