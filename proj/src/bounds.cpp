#include "bregman/bounds.hpp"

#include <cmath>
#include <string>

namespace bregman {

void BoundInputs::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0))
      throw std::invalid_argument(std::string("BoundInputs: ") + name +
                                  " must be positive");
  };
  positive(gamma, "gamma");
  positive(mu_w, "mu_w");
  positive(l_w, "l_w");
  positive(mu_2, "mu_2");
  positive(eta, "eta");
  if (d_dual < 0.0 || d_2 < 0.0)
    throw std::invalid_argument("BoundInputs: data radii must be nonnegative");
  if (mu_w > l_w)
    throw std::invalid_argument("BoundInputs: mu_w must not exceed l_w");
  if (!(eps > 0.0) || !(eps < 0.5))
    throw std::invalid_argument("BoundInputs: eps must lie in (0, 1/2)");
}

double loss_upper_bound_const(const BoundInputs& b, double t) {
  const double s = b.gamma * b.eta * t;
  if (!(s > 1.0))
    throw std::domain_error(
        "loss_upper_bound_const: requires gamma*eta*t > 1, got " +
        std::to_string(s));
  const double lg = std::log(s);
  return 1.0 / s + b.l_w * lg * lg / (4.0 * b.gamma * b.gamma * b.eta * t);
}

double margin_floor(const BoundInputs& b) {
  return std::sqrt(b.mu_w / b.l_w) * b.gamma;
}

namespace {

// Unique root of beta = exp(-coeff * beta^p), p in {1, 2}, on (0,1) for
// coeff > 0. The left side increases and the right side decreases, so the
// difference is strictly monotone and plain bisection applies.
double crossing_fixed_point(double coeff, bool quadratic) {
  double lo = 0.0, hi = 1.0;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    const double rhs = std::exp(-coeff * (quadratic ? mid * mid : mid));
    if (mid < rhs)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0))
    throw std::invalid_argument(std::string(what) + " must be positive");
}

} // namespace

double contraction_beta(double alpha, double gamma, double l_w) {
  require_positive(alpha, "contraction_beta: alpha");
  require_positive(gamma, "contraction_beta: gamma");
  require_positive(l_w, "contraction_beta: l_w");
  return crossing_fixed_point(2.0 * alpha * gamma * gamma / l_w, true);
}

double contraction_beta_lower(double alpha, double d_dual, double mu_w) {
  require_positive(alpha, "contraction_beta_lower: alpha");
  require_positive(d_dual, "contraction_beta_lower: d_dual");
  require_positive(mu_w, "contraction_beta_lower: mu_w");
  return crossing_fixed_point(2.0 * alpha * d_dual * d_dual / mu_w, false);
}

double t0_estimate(const BoundInputs& b, Regime regime) {
  const double g = b.gamma, eps = b.eps;
  switch (regime) {
    case Regime::ConstBppa: {
      const double poly = b.d_dual * b.d_dual / (eps * eps * g * g);
      const double expo =
          std::exp(b.d_dual * b.d_dual / (g * g * eps * eps) *
                   std::sqrt(b.l_w / b.mu_w)) /
          (g * g * b.eta);
      return std::max(poly, expo);
    }
    case Regime::VaryBppa: {
      const double base = b.l_w / (g * std::sqrt(b.mu_w) * eps);
      return std::pow(base, 8.0);
    }
    case Regime::ConstMd: {
      const double arg = std::pow(b.d_dual, 1.5) * b.d_2 * b.l_w * b.eta /
                         (g * g * std::sqrt(b.mu_w) * std::pow(b.mu_2, 1.5) *
                          std::pow(eps, 1.5)) *
                         std::log(1.0 / eps);
      return std::exp(arg);
    }
    case Regime::VaryMd: {
      const double base = b.d_2 * b.l_w / (g * b.mu_2 * std::sqrt(b.mu_w) * eps);
      return std::pow(base, 4.0);
    }
  }
  throw std::logic_error("t0_estimate: unreachable");
}

} // namespace bregman
