#pragma once

#include "bregman/dataset.hpp"
#include "bregman/potential.hpp"
#include "bregman/telemetry.hpp"

namespace bregman {

// Raised when a run is asked for on data no linear classifier separates.
// CLI maps this to exit code 3.
class not_separable_error : public std::runtime_error {
 public:
  explicit not_separable_error(const std::string& what)
      : std::runtime_error(what) {}
};

enum class Algo { Md, Bppa };

enum class ScheduleKind {
  Constant,        // eta_t = eta, any positive eta
  ConstantCappedMd,// eta_t = eta, validated against eta <= mu_2 / (2 D_2)
  VaryingSqrt,     // eta_t = alpha_t / L(theta_t), alpha_t = 1/sqrt(t+1)
  VaryingCappedMd  // as VaryingSqrt with alpha_t = min{mu_2/(2 D_2), 1/sqrt(t+1)}
};

struct StepsizeSchedule {
  ScheduleKind kind;
  double eta = 0.0; // constant kinds only

  static StepsizeSchedule constant(double eta);
  static StepsizeSchedule constant_capped_md(double eta);
  static StepsizeSchedule varying_sqrt();
  static StepsizeSchedule varying_capped_md();
};

struct InnerSolveConfig {
  enum class Mode { FixedSteps, ToleranceStop };
  Mode mode = Mode::FixedSteps;
  std::size_t max_steps = 128;   // FixedSteps budget
  double step_scale = 0.2;       // inner stepsize = step_scale * eta_t
  double delta_scale = 1e-10;    // ToleranceStop: delta_t = delta_scale * min(1, L(theta_t))
};

// Hard cap on ToleranceStop inner iterations.
inline constexpr std::size_t kInnerIterCap = 100000;

// One mirror-descent step: grad_w(theta_next) = grad_w(theta) - 2 eta grad L(theta).
Vec md_step(const Dataset& ds, const QuadraticPotential& p, const Vec& theta,
            double eta);

struct BppaStepResult {
  Vec theta;
  std::size_t inner_iters;
  double grad_norm; // l2 norm of the inner objective gradient at the result
};

// One inexact proximal step: gradient descent on
// phi(theta) = L(theta) + D_w(theta, theta_t) / (2 eta), warm-started at
// theta_t with inner stepsize step_scale * eta. Any inner step that would
// increase phi is halved up to 30 times; when no halving yields a
// representable decrease the iterate has converged to float precision and
// the inner loop stops early. phi(result) <= phi(theta_t) always, so
// L-monotonicity across outer steps is guaranteed by construction.
BppaStepResult bppa_step(const Dataset& ds, const QuadraticPotential& p,
                         const Vec& theta, double eta,
                         const InnerSolveConfig& inner);

struct RunConfig {
  Algo algo = Algo::Md;
  StepsizeSchedule schedule = StepsizeSchedule::constant(1.0);
  std::size_t steps = 0;
  InnerSolveConfig inner;
  // Verify separability through the max-margin oracle before running.
  bool check_separable = true;
};

// Runs `steps` iterations from theta_0 = 0 and records rows t = 0..steps
// into the recorder (row t carries the stepsize used at step t; the final
// row carries eta = 0). Returns the recorded trajectory.
Trajectory run(const Dataset& ds, const QuadraticPotential& p,
               const RunConfig& cfg, Recorder& recorder);

} // namespace bregman
