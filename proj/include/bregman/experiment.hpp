#pragma once

#include <cstdint>
#include <string>

#include "bregman/dataset.hpp"
#include "bregman/solver.hpp"

namespace bregman {

// Bad or missing configuration. CLI maps this to exit code 2.
class config_error : public std::runtime_error {
 public:
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

// Flat dotted-key experiment description. Parsed strictly: unknown keys are
// rejected, required keys must be present, and everything is validated
// before any computation starts.
struct ExperimentConfig {
  std::string dataset_kind;       // fixture | csv | spheres | tightness
  std::string dataset_path;       // csv
  std::size_t dataset_m = 0;      // tightness m; spheres unlabeled count
  std::size_t dataset_n = 2;      // spheres labeled count
  std::size_t dataset_d = 2;      // spheres dimension
  double dataset_r = 0.8;         // spheres radius
  std::uint64_t dataset_seed = 1; // spheres seed

  std::string potential_kind;     // identity | matrix | d1 | d2 | d3
  std::vector<Vec> potential_matrix;

  std::string norm_kind;          // l1 | l2 | linf | mahalanobis
  std::vector<Vec> norm_matrix;

  std::string algo;               // md | bppa
  std::string schedule_kind;      // constant | constant_capped | varying | varying_capped
  double schedule_eta = 1.0;

  std::size_t run_steps = 0;      // run.T
  bool check_separable = true;

  std::string inner_mode = "fixed"; // fixed | tolerance
  std::size_t inner_k = 128;
  double inner_step_scale = 0.2;
  double inner_delta_scale = 1e-10;

  std::string output_trajectory;  // optional trajectory file
  std::string output_format = "csv"; // csv | json
  std::string output_summary;     // optional summary file
};

// "a,b;c,d" -> rows split on ';', entries on ','. Must be square.
std::vector<Vec> parse_matrix(const std::string& text);

ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);

struct RunOutcome {
  Trajectory trajectory;
  std::string summary_json; // {final_loss, final_margin, final_alignment, gamma_star}
};

RunOutcome execute_run(const ExperimentConfig& cfg);

// Reproduction presets. Each writes per-run trajectory files under out_dir
// (created if missing) and returns a JSON summary string.
//
// synthetic4: the four-point set, BPPA and MD with constant eta = 1 and with
// eta_t = 1/(L(theta_t) sqrt(t+1)), 1200 steps, inner budget 128 at 0.2.
// spheres: 8 seeds x 3 quadratic potentials (identity, second moment of the
// unlabeled cloud, its inverse), BPPA constant eta = 1, 2000 steps; reports
// per-seed and mean alignment of the final iterate with the hidden center.
// Seeds run concurrently; results are merged in seed order.
// tightness: m in {4, 9, 16, 25}, MD with w(x) = ||x||^2/2 measured against
// the l1 norm for 5000 steps; reports the margin-to-gamma ratio against the
// closed-form prediction and the 2 sqrt(mu_w/L_w) cap.
std::string repro_synthetic4(const std::string& out_dir);
std::string repro_spheres(const std::string& out_dir);
std::string repro_tightness(const std::string& out_dir);

} // namespace bregman
