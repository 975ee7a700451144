#pragma once

#include <cstddef>
#include <stdexcept>

namespace bregman {

// Problem constants the closed-form rate statements depend on: max margin
// gamma, potential convexity constants mu_w <= L_w against the working norm,
// mu_2 against l2, data radii D_dual (dual norm) and D_2 (l2), stepsize eta
// and target accuracy eps in (0, 1/2).
struct BoundInputs {
  double gamma;
  double mu_w;
  double l_w;
  double mu_2;
  double d_dual;
  double d_2;
  double eta;
  double eps;

  void validate() const;
};

// Loss decay guarantee for constant-stepsize runs:
// 1/(gamma eta t) + L_w log^2(gamma eta t) / (4 gamma^2 eta t).
// Only applicable once gamma*eta*t > 1; throws std::domain_error earlier.
double loss_upper_bound_const(const BoundInputs& b, double t);

// Asymptotic normalized-margin floor sqrt(mu_w / L_w) * gamma.
double margin_floor(const BoundInputs& b);

// Per-step loss contraction factor: the unique fixed point of
// beta = exp(-2 alpha beta^2 gamma^2 / L_w) in (0,1). The min-max over the
// two branches is attained at their crossing since one branch increases and
// the other decreases in beta; bisection to 1e-12.
double contraction_beta(double alpha, double gamma, double l_w);

// Matching per-step lower contraction factor: fixed point of
// beta = exp(-2 alpha D_dual^2 beta / mu_w) in (0,1).
double contraction_beta_lower(double alpha, double d_dual, double mu_w);

enum class Regime { ConstBppa, VaryBppa, ConstMd, VaryMd };

// Iteration-count threshold after which the margin guarantees kick in.
// Order-of-magnitude only: the hidden constants are set to 1, so the value
// must never be used as a pass/fail gate.
double t0_estimate(const BoundInputs& b, Regime regime);

} // namespace bregman
