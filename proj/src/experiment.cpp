#include "bregman/experiment.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "bregman/bounds.hpp"
#include "bregman/loss.hpp"
#include "bregman/oracle.hpp"

namespace bregman {

namespace {

using nlohmann::json;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double out;
  try {
    out = std::stod(v, &used);
  } catch (const std::exception&) {
    throw config_error("config: key '" + key + "': bad number '" + v + "'");
  }
  if (used != v.size())
    throw config_error("config: key '" + key + "': bad number '" + v + "'");
  return out;
}

std::size_t to_count(const std::string& key, const std::string& v) {
  const double d = to_double(key, v);
  if (d < 0.0 || d != std::floor(d))
    throw config_error("config: key '" + key + "': expected a nonnegative integer");
  return static_cast<std::size_t>(d);
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true") return true;
  if (v == "false") return false;
  throw config_error("config: key '" + key + "': expected true or false");
}

void expect_one_of(const std::string& key, const std::string& v,
                   const std::set<std::string>& allowed) {
  if (!allowed.count(v)) {
    std::string opts;
    for (const std::string& a : allowed) opts += (opts.empty() ? "" : ", ") + a;
    throw config_error("config: key '" + key + "': unknown value '" + v +
                       "' (expected one of: " + opts + ")");
  }
}

} // namespace

std::vector<Vec> parse_matrix(const std::string& text) {
  std::vector<Vec> rows;
  std::stringstream ss(text);
  std::string row_text;
  while (std::getline(ss, row_text, ';')) {
    Vec row;
    std::stringstream rs(row_text);
    std::string cell;
    while (std::getline(rs, cell, ',')) {
      cell = trim(cell);
      row.push_back(to_double("matrix", cell));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw config_error("config: empty matrix literal");
  for (const Vec& r : rows)
    if (r.size() != rows.size())
      throw config_error("config: matrix literal must be square, got row of " +
                         std::to_string(r.size()) + " in " +
                         std::to_string(rows.size()) + " rows");
  return rows;
}

ExperimentConfig parse_config_text(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw config_error("config: line " + std::to_string(line_no) +
                         ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw config_error("config: line " + std::to_string(line_no) +
                         ": empty key or value");
    if (kv.count(key))
      throw config_error("config: duplicate key '" + key + "'");
    kv[key] = value;
  }

  ExperimentConfig cfg;
  std::set<std::string> seen;
  auto take = [&](const std::string& key) -> const std::string* {
    auto it = kv.find(key);
    if (it == kv.end()) return nullptr;
    seen.insert(key);
    return &it->second;
  };
  auto require = [&](const std::string& key) -> const std::string& {
    const std::string* v = take(key);
    if (!v) throw config_error("config: missing required key '" + key + "'");
    return *v;
  };

  cfg.dataset_kind = require("dataset.kind");
  expect_one_of("dataset.kind", cfg.dataset_kind,
                {"fixture", "csv", "spheres", "tightness"});
  if (const auto* v = take("dataset.path")) cfg.dataset_path = *v;
  if (const auto* v = take("dataset.m")) cfg.dataset_m = to_count("dataset.m", *v);
  if (const auto* v = take("dataset.n")) cfg.dataset_n = to_count("dataset.n", *v);
  if (const auto* v = take("dataset.d")) cfg.dataset_d = to_count("dataset.d", *v);
  if (const auto* v = take("dataset.r")) cfg.dataset_r = to_double("dataset.r", *v);
  if (const auto* v = take("dataset.seed"))
    cfg.dataset_seed = static_cast<std::uint64_t>(to_count("dataset.seed", *v));

  cfg.potential_kind = require("potential.kind");
  expect_one_of("potential.kind", cfg.potential_kind,
                {"identity", "matrix", "d1", "d2", "d3"});
  if (const auto* v = take("potential.matrix"))
    cfg.potential_matrix = parse_matrix(*v);

  cfg.norm_kind = require("norm.kind");
  expect_one_of("norm.kind", cfg.norm_kind, {"l1", "l2", "linf", "mahalanobis"});
  if (const auto* v = take("norm.matrix")) cfg.norm_matrix = parse_matrix(*v);

  cfg.algo = require("algo");
  expect_one_of("algo", cfg.algo, {"md", "bppa"});
  cfg.schedule_kind = require("schedule.kind");
  expect_one_of("schedule.kind", cfg.schedule_kind,
                {"constant", "constant_capped", "varying", "varying_capped"});
  if (const auto* v = take("schedule.eta"))
    cfg.schedule_eta = to_double("schedule.eta", *v);

  cfg.run_steps = to_count("run.T", require("run.T"));
  if (const auto* v = take("run.check_separable"))
    cfg.check_separable = to_bool("run.check_separable", *v);

  if (const auto* v = take("solver.inner.mode")) cfg.inner_mode = *v;
  expect_one_of("solver.inner.mode", cfg.inner_mode, {"fixed", "tolerance"});
  if (const auto* v = take("solver.inner.k"))
    cfg.inner_k = to_count("solver.inner.k", *v);
  if (const auto* v = take("solver.inner.step_scale"))
    cfg.inner_step_scale = to_double("solver.inner.step_scale", *v);
  if (const auto* v = take("solver.inner.delta_scale"))
    cfg.inner_delta_scale = to_double("solver.inner.delta_scale", *v);

  if (const auto* v = take("output.trajectory")) cfg.output_trajectory = *v;
  if (const auto* v = take("output.format")) cfg.output_format = *v;
  expect_one_of("output.format", cfg.output_format, {"csv", "json"});
  if (const auto* v = take("output.summary")) cfg.output_summary = *v;

  for (const auto& [key, value] : kv)
    if (!seen.count(key)) throw config_error("config: unknown key '" + key + "'");

  // cross-key requirements, checked before any computation
  if (cfg.dataset_kind == "csv" && cfg.dataset_path.empty())
    throw config_error("config: dataset.kind = csv requires dataset.path");
  if (cfg.dataset_kind == "tightness" && cfg.dataset_m == 0)
    throw config_error("config: dataset.kind = tightness requires dataset.m >= 1");
  if (cfg.dataset_kind == "spheres" && cfg.dataset_m == 0)
    cfg.dataset_m = 100;
  if (cfg.potential_kind == "matrix" && cfg.potential_matrix.empty())
    throw config_error("config: potential.kind = matrix requires potential.matrix");
  if (cfg.potential_kind != "matrix" && !cfg.potential_matrix.empty())
    throw config_error("config: potential.matrix given but potential.kind is '" +
                       cfg.potential_kind + "'");
  if ((cfg.potential_kind == "d1" || cfg.potential_kind == "d2" ||
       cfg.potential_kind == "d3") &&
      cfg.dataset_kind != "spheres")
    throw config_error("config: potential.kind = " + cfg.potential_kind +
                       " requires dataset.kind = spheres");
  if (cfg.norm_kind == "mahalanobis" && cfg.norm_matrix.empty())
    throw config_error("config: norm.kind = mahalanobis requires norm.matrix");
  if (cfg.norm_kind != "mahalanobis" && !cfg.norm_matrix.empty())
    throw config_error("config: norm.matrix given but norm.kind is '" +
                       cfg.norm_kind + "'");
  if ((cfg.schedule_kind == "constant" || cfg.schedule_kind == "constant_capped") &&
      !(cfg.schedule_eta > 0.0))
    throw config_error("config: schedule.eta must be positive");
  if (!(cfg.inner_step_scale > 0.0))
    throw config_error("config: solver.inner.step_scale must be positive");
  if (!(cfg.inner_delta_scale > 0.0))
    throw config_error("config: solver.inner.delta_scale must be positive");
  if (cfg.inner_k == 0)
    throw config_error("config: solver.inner.k must be positive");
  return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("config: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

namespace {

struct Problem {
  Dataset data;
  QuadraticPotential potential;
  NormSpec norm_spec;
};

SymMatrix matrix_from_rows(const std::vector<Vec>& rows) {
  return SymMatrix::from_rows(rows);
}

Problem build_problem(const ExperimentConfig& cfg) {
  // dataset
  std::vector<Vec> unlabeled;
  Dataset data = [&]() -> Dataset {
    if (cfg.dataset_kind == "fixture") return fixture_four_point();
    if (cfg.dataset_kind == "csv") {
      try {
        return load_csv(cfg.dataset_path);
      } catch (const std::runtime_error& e) {
        throw config_error(e.what());
      }
    }
    if (cfg.dataset_kind == "tightness")
      return gen_tightness(cfg.dataset_m).data;
    SpheresConfig sc{cfg.dataset_n, cfg.dataset_m, cfg.dataset_d, cfg.dataset_r,
                     cfg.dataset_seed};
    SpheresSample sample = gen_spheres(sc);
    unlabeled = std::move(sample.unlabeled);
    return std::move(sample.labeled);
  }();

  // potential
  QuadraticPotential potential = [&]() -> QuadraticPotential {
    if (cfg.potential_kind == "identity")
      return QuadraticPotential::identity(data.dim());
    if (cfg.potential_kind == "matrix")
      return QuadraticPotential(matrix_from_rows(cfg.potential_matrix));
    if (cfg.potential_kind == "d1") return QuadraticPotential::identity(data.dim());
    const SymMatrix cov = empirical_covariance(unlabeled);
    if (cfg.potential_kind == "d2") return QuadraticPotential(cov);
    return QuadraticPotential(spd_inverse(cov)); // d3
  }();
  if (potential.dim() != data.dim())
    throw config_error("config: potential dimension " +
                       std::to_string(potential.dim()) +
                       " does not match data dimension " +
                       std::to_string(data.dim()));

  // norm
  NormSpec norm_spec = [&]() -> NormSpec {
    if (cfg.norm_kind == "l1") return NormSpec::l1();
    if (cfg.norm_kind == "l2") return NormSpec::l2();
    if (cfg.norm_kind == "linf") return NormSpec::linf();
    return NormSpec::mahalanobis(matrix_from_rows(cfg.norm_matrix));
  }();
  if (norm_spec.kind() == NormKind::Mahalanobis &&
      norm_spec.matrix().dim() != data.dim())
    throw config_error("config: norm matrix dimension mismatch");

  return {std::move(data), std::move(potential), std::move(norm_spec)};
}

RunConfig run_config_of(const ExperimentConfig& cfg) {
  RunConfig rc;
  rc.algo = cfg.algo == "md" ? Algo::Md : Algo::Bppa;
  if (cfg.schedule_kind == "constant")
    rc.schedule = StepsizeSchedule::constant(cfg.schedule_eta);
  else if (cfg.schedule_kind == "constant_capped")
    rc.schedule = StepsizeSchedule::constant_capped_md(cfg.schedule_eta);
  else if (cfg.schedule_kind == "varying")
    rc.schedule = StepsizeSchedule::varying_sqrt();
  else
    rc.schedule = StepsizeSchedule::varying_capped_md();
  rc.steps = cfg.run_steps;
  rc.inner.mode = cfg.inner_mode == "fixed" ? InnerSolveConfig::Mode::FixedSteps
                                            : InnerSolveConfig::Mode::ToleranceStop;
  rc.inner.max_steps = cfg.inner_k;
  rc.inner.step_scale = cfg.inner_step_scale;
  rc.inner.delta_scale = cfg.inner_delta_scale;
  rc.check_separable = false; // the oracle gate runs in execute_run
  return rc;
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

} // namespace

RunOutcome execute_run(const ExperimentConfig& cfg) {
  Problem prob = build_problem(cfg);

  Vec reference;
  json gamma_star; // null when the oracle is skipped
  if (cfg.check_separable) {
    const MarginCertificate cert = max_margin(prob.data, prob.norm_spec);
    if (!cert.feasible)
      throw not_separable_error(
          "dataset is not linearly separable (oracle gamma = " +
          std::to_string(cert.gamma_star) + ")");
    reference = cert.u_star;
    gamma_star = cert.gamma_star;
  }

  Recorder recorder(prob.data, prob.norm_spec, reference);
  RunOutcome outcome;
  outcome.trajectory = run(prob.data, prob.potential, run_config_of(cfg), recorder);

  const TrajectoryRow& last = outcome.trajectory.rows.back();
  json summary = {{"final_loss", last.loss},
                  {"final_margin", last.margin_n},
                  {"final_alignment", last.alignment},
                  {"gamma_star", gamma_star}};
  outcome.summary_json = summary.dump(2);

  if (!cfg.output_trajectory.empty())
    export_trajectory(outcome.trajectory,
                      cfg.output_format == "csv" ? ExportFormat::Csv
                                                 : ExportFormat::Json,
                      cfg.output_trajectory);
  if (!cfg.output_summary.empty())
    write_text(cfg.output_summary, outcome.summary_json + "\n");
  return outcome;
}

namespace {

std::string out_path(const std::string& dir, const std::string& name) {
  std::filesystem::create_directories(dir);
  return (std::filesystem::path(dir) / name).string();
}

} // namespace

std::string repro_synthetic4(const std::string& out_dir) {
  const Dataset data = fixture_four_point();
  const QuadraticPotential potential = QuadraticPotential::identity(2);
  const NormSpec norm_spec = NormSpec::l2();
  const MarginCertificate cert = max_margin(data, norm_spec);

  json summary = json::object();
  const std::pair<Algo, const char*> algos[] = {{Algo::Bppa, "bppa"},
                                                {Algo::Md, "md"}};
  const std::pair<ScheduleKind, const char*> schedules[] = {
      {ScheduleKind::Constant, "constant"}, {ScheduleKind::VaryingSqrt, "varying"}};
  for (const auto& [algo, algo_name] : algos) {
    for (const auto& [sched, sched_name] : schedules) {
      RunConfig rc;
      rc.algo = algo;
      rc.schedule = sched == ScheduleKind::Constant
                        ? StepsizeSchedule::constant(1.0)
                        : StepsizeSchedule::varying_sqrt();
      rc.steps = 1200;
      rc.check_separable = false;
      Recorder recorder(data, norm_spec, cert.u_star);
      const Trajectory traj = run(data, potential, rc, recorder);
      const std::string name =
          std::string("synthetic4_") + algo_name + "_" + sched_name;
      export_csv(traj, out_path(out_dir, name + ".csv"));
      const TrajectoryRow& last = traj.rows.back();
      summary[name] = {{"final_loss", last.loss},
                       {"final_margin", last.margin_n},
                       {"final_alignment", last.alignment}};
    }
  }
  return summary.dump(2);
}

std::string repro_spheres(const std::string& out_dir) {
  constexpr int kSeeds = 8;
  constexpr std::size_t kSteps = 2000;
  const char* div_names[3] = {"d1", "d2", "d3"};

  struct SeedResult {
    double align[3];
    Trajectory traj[3];
  };

  auto run_seed = [&](std::uint64_t seed) {
    SpheresConfig sc;
    sc.seed = seed;
    const SpheresSample sample = gen_spheres(sc);
    const SymMatrix cov = empirical_covariance(sample.unlabeled);
    const SymMatrix mats[3] = {SymMatrix::identity(sc.d), cov, spd_inverse(cov)};
    SeedResult res;
    for (int k = 0; k < 3; ++k) {
      const QuadraticPotential potential(mats[k]);
      RunConfig rc;
      rc.algo = Algo::Bppa;
      rc.schedule = StepsizeSchedule::constant(1.0);
      rc.steps = kSteps;
      rc.check_separable = false;
      Recorder recorder(sample.labeled, NormSpec::mahalanobis(mats[k]), sample.mu);
      res.traj[k] = run(sample.labeled, potential, rc, recorder);
      res.align[k] = res.traj[k].rows.back().alignment;
    }
    return res;
  };

  // seeds run concurrently; merge is by seed order, so output is deterministic
  std::vector<std::future<SeedResult>> futures;
  for (int s = 1; s <= kSeeds; ++s)
    futures.push_back(std::async(std::launch::async, run_seed, s));

  json per_seed = json::object();
  double mean[3] = {0.0, 0.0, 0.0};
  for (int s = 0; s < kSeeds; ++s) {
    SeedResult res = futures[s].get();
    for (int k = 0; k < 3; ++k) {
      const std::string name =
          std::string("spheres_seed") + std::to_string(s + 1) + "_" + div_names[k];
      export_csv(res.traj[k], out_path(out_dir, name + ".csv"));
      per_seed[div_names[k]].push_back(res.align[k]);
      mean[k] += res.align[k] / kSeeds;
    }
  }
  json summary = {{"per_seed", per_seed},
                  {"mean_alignment",
                   {{"d1", mean[0]}, {"d2", mean[1]}, {"d3", mean[2]}}}};
  return summary.dump(2);
}

std::string repro_tightness(const std::string& out_dir) {
  json summary = json::object();
  for (std::size_t m : {4, 9, 16, 25}) {
    const TightnessProblem prob = gen_tightness(m);
    const QuadraticPotential potential(
        SymMatrix::identity(m).scaled_by(0.5)); // w(x) = ||x||^2 / 2
    const NormSpec norm_spec = NormSpec::l1();
    const MarginCertificate cert = max_margin(prob.data, norm_spec);

    RunConfig rc;
    rc.algo = Algo::Md;
    rc.schedule = StepsizeSchedule::varying_capped_md();
    rc.steps = 5000;
    rc.check_separable = false;
    Recorder recorder(prob.data, norm_spec, cert.u_star);
    const Trajectory traj = run(prob.data, potential, rc, recorder);
    export_csv(traj, out_path(out_dir, "tightness_m" + std::to_string(m) + ".csv"));

    const ConvexityProfile profile = convexity_profile(potential, norm_spec);
    const double measured = traj.rows.back().margin_n / cert.gamma_star;
    const double md = static_cast<double>(m);
    const double predicted =
        (2.0 - 1.0 / md) / (std::sqrt(md) - 1.0 / std::sqrt(md) + 1.0);
    summary["m" + std::to_string(m)] = {
        {"gamma", cert.gamma_star},
        {"measured_ratio", measured},
        {"predicted_ratio", predicted},
        {"cap", 2.0 * std::sqrt(profile.mu_w / profile.l_w)}};
  }
  return summary.dump(2);
}

} // namespace bregman
