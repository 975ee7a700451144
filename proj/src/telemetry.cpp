#include "bregman/telemetry.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "bregman/loss.hpp"

namespace bregman {

namespace {

const char* kCsvHeader = "t,eta,loss,norm_N,norm_2,margin_N,alignment,inner_iters";

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

} // namespace

double alignment(const Vec& a, const Vec& b) {
  const double na = norm2(a), nb = norm2(b);
  if (na == 0.0 || nb == 0.0)
    throw std::invalid_argument("alignment: zero vector");
  return dot(a, b) / (na * nb);
}

Recorder::Recorder(const Dataset& ds, NormSpec norm_spec, Vec reference)
    : ds_(ds), norm_spec_(std::move(norm_spec)), reference_(std::move(reference)) {
  if (!reference_.empty() && reference_.size() != ds.dim())
    throw std::invalid_argument("Recorder: reference dimension mismatch");
}

void Recorder::record(std::size_t t, double eta, double loss_value,
                      const Vec& theta, std::size_t inner_iters) {
  TrajectoryRow row;
  row.t = t;
  row.eta = eta;
  row.loss = loss_value;
  row.norm_n = norm(norm_spec_, theta);
  row.norm_2 = norm2(theta);
  const bool zero = row.norm_2 == 0.0;
  row.margin_n = zero ? 0.0 : normalized_margin(ds_, theta, norm_spec_);
  row.alignment =
      (zero || reference_.empty()) ? 0.0 : alignment(theta, reference_);
  row.inner_iters = inner_iters;
  traj_.rows.push_back(row);
}

std::string trajectory_to_csv(const Trajectory& traj) {
  std::ostringstream out;
  out << kCsvHeader << '\n';
  for (const TrajectoryRow& r : traj.rows) {
    out << r.t << ',' << fmt17(r.eta) << ',' << fmt17(r.loss) << ','
        << fmt17(r.norm_n) << ',' << fmt17(r.norm_2) << ',' << fmt17(r.margin_n)
        << ',' << fmt17(r.alignment) << ',' << r.inner_iters << '\n';
  }
  return out.str();
}

std::string trajectory_to_json(const Trajectory& traj) {
  nlohmann::json arr = nlohmann::json::array();
  for (const TrajectoryRow& r : traj.rows) {
    arr.push_back({{"t", r.t},
                   {"eta", r.eta},
                   {"loss", r.loss},
                   {"norm_N", r.norm_n},
                   {"norm_2", r.norm_2},
                   {"margin_N", r.margin_n},
                   {"alignment", r.alignment},
                   {"inner_iters", r.inner_iters}});
  }
  return arr.dump(2);
}

namespace {

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

} // namespace

void export_csv(const Trajectory& traj, const std::string& path) {
  write_file(path, trajectory_to_csv(traj));
}

void export_json(const Trajectory& traj, const std::string& path) {
  write_file(path, trajectory_to_json(traj));
}

void export_trajectory(const Trajectory& traj, ExportFormat format,
                       const std::string& path) {
  format == ExportFormat::Csv ? export_csv(traj, path) : export_json(traj, path);
}

Trajectory trajectory_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader)
    throw std::runtime_error("trajectory_from_csv: bad or missing header");
  Trajectory traj;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    TrajectoryRow r;
    std::istringstream row(line);
    char comma;
    if (!(row >> r.t >> comma >> r.eta >> comma >> r.loss >> comma >> r.norm_n >>
          comma >> r.norm_2 >> comma >> r.margin_n >> comma >> r.alignment >>
          comma >> r.inner_iters))
      throw std::runtime_error("trajectory_from_csv: bad row at line " +
                               std::to_string(line_no));
    traj.rows.push_back(r);
  }
  return traj;
}

Trajectory import_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("import_csv: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return trajectory_from_csv(buf.str());
}

} // namespace bregman
