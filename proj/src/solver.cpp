#include "bregman/solver.hpp"

#include <cmath>

#include "bregman/loss.hpp"
#include "bregman/oracle.hpp"

namespace bregman {

StepsizeSchedule StepsizeSchedule::constant(double eta) {
  if (!(eta > 0.0))
    throw std::invalid_argument("StepsizeSchedule: eta must be positive");
  return {ScheduleKind::Constant, eta};
}

StepsizeSchedule StepsizeSchedule::constant_capped_md(double eta) {
  if (!(eta > 0.0))
    throw std::invalid_argument("StepsizeSchedule: eta must be positive");
  return {ScheduleKind::ConstantCappedMd, eta};
}

StepsizeSchedule StepsizeSchedule::varying_sqrt() {
  return {ScheduleKind::VaryingSqrt, 0.0};
}

StepsizeSchedule StepsizeSchedule::varying_capped_md() {
  return {ScheduleKind::VaryingCappedMd, 0.0};
}

Vec md_step(const Dataset& ds, const QuadraticPotential& p, const Vec& theta,
            double eta) {
  if (!(eta > 0.0)) throw std::invalid_argument("md_step: eta must be positive");
  const LossEval le = loss_grad(ds, theta);
  Vec z = p.grad(theta);
  axpy(z, -2.0 * eta, le.gradient);
  Vec next = p.inv_grad(z);
  require_finite(next, "md_step");
  return next;
}

BppaStepResult bppa_step(const Dataset& ds, const QuadraticPotential& p,
                         const Vec& theta, double eta,
                         const InnerSolveConfig& inner) {
  if (!(eta > 0.0)) throw std::invalid_argument("bppa_step: eta must be positive");
  const double half_inv_eta = 0.5 / eta;

  auto phi = [&](const Vec& v) {
    return loss(ds, v) + half_inv_eta * p.bregman(v, theta);
  };
  auto phi_grad = [&](const Vec& v) {
    Vec g = loss_grad(ds, v).gradient;
    // d/dv D_w(v, theta) = grad_w(v) - grad_w(theta) = 2 A (v - theta)
    axpy(g, 2.0 * half_inv_eta, p.matrix().apply(sub(v, theta)));
    return g;
  };

  const bool fixed = inner.mode == InnerSolveConfig::Mode::FixedSteps;
  const std::size_t budget = fixed ? inner.max_steps : kInnerIterCap;
  // Tolerance scales with the current loss so the stop keeps pace with the
  // shrinking gradient magnitudes along a run; losses start at 1 and are
  // monotone under BPPA, so min() caps the scale-up for adversarial inputs.
  const double delta =
      fixed ? 0.0 : inner.delta_scale * std::min(1.0, loss(ds, theta));

  Vec cur = theta;
  double phi_cur = phi(cur);
  std::size_t iters = 0;
  while (iters < budget) {
    const Vec g = phi_grad(cur);
    if (!fixed && norm2(g) <= delta) break;
    double step = inner.step_scale * eta;
    bool accepted = false;
    for (int halvings = 0; halvings <= 30; ++halvings) {
      Vec cand = cur;
      axpy(cand, -step, g);
      if (cand == cur) break; // step underflowed, no representable movement
      const double phi_cand = phi(cand);
      if (phi_cand <= phi_cur && std::isfinite(phi_cand)) {
        cur = std::move(cand);
        phi_cur = phi_cand;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    // Exhausted backtracking means no representable descent remains along
    // -g; the iterate is converged to float precision. phi(cur) <= phi(theta)
    // still holds through the accepted steps, so stopping here keeps the
    // outer loss monotone.
    if (!accepted) break;
    ++iters;
  }
  require_finite(cur, "bppa_step");
  return {cur, iters, norm2(phi_grad(cur))};
}

namespace {

double capped_md_alpha(const Dataset& ds, const QuadraticPotential& p) {
  const double mu_2 = mu_against_l2(p);
  const double d_2 = stats(ds, NormSpec::l2()).d_2;
  if (d_2 == 0.0)
    throw std::invalid_argument("capped MD schedule: data radius D_2 is zero");
  return mu_2 / (2.0 * d_2);
}

} // namespace

Trajectory run(const Dataset& ds, const QuadraticPotential& p,
               const RunConfig& cfg, Recorder& recorder) {
  if (p.dim() != ds.dim())
    throw std::invalid_argument("run: potential dimension mismatch");

  if (cfg.check_separable) {
    // l2 route; separability does not depend on the norm
    const MarginCertificate cert = max_margin(ds, NormSpec::l2());
    if (!cert.feasible)
      throw not_separable_error(
          "run: dataset is not linearly separable (max-margin certificate "
          "gamma = " +
          std::to_string(cert.gamma_star) + ")");
  }

  double cap = 0.0;
  if (cfg.schedule.kind == ScheduleKind::ConstantCappedMd ||
      cfg.schedule.kind == ScheduleKind::VaryingCappedMd) {
    cap = capped_md_alpha(ds, p);
    if (cfg.schedule.kind == ScheduleKind::ConstantCappedMd &&
        cfg.schedule.eta > cap)
      throw std::invalid_argument(
          "run: constant capped-MD stepsize " + std::to_string(cfg.schedule.eta) +
          " exceeds the cap mu_2/(2 D_2) = " + std::to_string(cap));
  }

  Vec theta(ds.dim(), 0.0);
  double cur_loss = loss(ds, theta);
  for (std::size_t t = 0; t < cfg.steps; ++t) {
    double eta = 0.0;
    switch (cfg.schedule.kind) {
      case ScheduleKind::Constant:
      case ScheduleKind::ConstantCappedMd:
        eta = cfg.schedule.eta;
        break;
      case ScheduleKind::VaryingSqrt:
        eta = 1.0 / (std::sqrt(static_cast<double>(t) + 1.0) * cur_loss);
        break;
      case ScheduleKind::VaryingCappedMd:
        eta = std::min(cap, 1.0 / std::sqrt(static_cast<double>(t) + 1.0)) /
              cur_loss;
        break;
    }

    Vec next;
    std::size_t inner_iters = 0;
    if (cfg.algo == Algo::Md) {
      next = md_step(ds, p, theta, eta);
    } else {
      try {
        BppaStepResult r = bppa_step(ds, p, theta, eta, cfg.inner);
        next = std::move(r.theta);
        inner_iters = r.inner_iters;
      } catch (const numerical_error& e) {
        throw numerical_error("step " + std::to_string(t) + ": " + e.what());
      }
    }
    recorder.record(t, eta, cur_loss, theta, inner_iters);
    theta = std::move(next);
    cur_loss = loss(ds, theta);
  }
  recorder.record(cfg.steps, 0.0, cur_loss, theta, 0);
  return recorder.take();
}

} // namespace bregman
