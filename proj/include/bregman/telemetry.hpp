#pragma once

#include <string>

#include "bregman/dataset.hpp"
#include "bregman/linalg.hpp"

namespace bregman {

// One per-iteration record. Row t describes the state theta_t together
// with the step taken from it: eta is the stepsize used at step t and
// inner_iters the inner-solver work of that step (0 for mirror descent).
// The final row of a finished run has eta = 0 and inner_iters = 0 since no
// step leaves it. margin_n and alignment are recorded as 0 at theta = 0
// (the initial row), where neither quantity is defined.
struct TrajectoryRow {
  std::size_t t;
  double eta;
  double loss;
  double norm_n;
  double norm_2;
  double margin_n;
  double alignment;
  std::size_t inner_iters;
};

struct Trajectory {
  std::vector<TrajectoryRow> rows;
};

// Cosine of the angle between a and b (both l2-normalized first).
// Throws std::invalid_argument when either vector is zero.
double alignment(const Vec& a, const Vec& b);

// Builds trajectory rows from raw iterates: margin against `norm_spec`,
// alignment against `reference` (skipped, recorded as 0, when the
// reference is empty or the iterate is zero).
class Recorder {
 public:
  Recorder(const Dataset& ds, NormSpec norm_spec, Vec reference = {});

  void record(std::size_t t, double eta, double loss_value, const Vec& theta,
              std::size_t inner_iters);
  const Trajectory& trajectory() const { return traj_; }
  Trajectory take() { return std::move(traj_); }

 private:
  const Dataset& ds_;
  NormSpec norm_spec_;
  Vec reference_;
  Trajectory traj_;
};

enum class ExportFormat { Csv, Json };

// CSV column order is fixed: t,eta,loss,norm_N,norm_2,margin_N,alignment,
// inner_iters. Floats are printed with 17 significant digits so parsing
// them back reproduces the exact doubles.
void export_csv(const Trajectory& traj, const std::string& path);
void export_json(const Trajectory& traj, const std::string& path);
void export_trajectory(const Trajectory& traj, ExportFormat format,
                       const std::string& path);
std::string trajectory_to_csv(const Trajectory& traj);
std::string trajectory_to_json(const Trajectory& traj);

Trajectory import_csv(const std::string& path);
Trajectory trajectory_from_csv(const std::string& text);

} // namespace bregman
