#pragma once

#include "bregman/dataset.hpp"
#include "bregman/linalg.hpp"

namespace bregman {

// Margins are clamped to [-700, 700] before exponentiation, which keeps
// every summand inside double range on both sides; the loss is therefore
// always positive and finite.
inline constexpr double kMarginClamp = 700.0;

// L(theta) = (1/n) sum_i exp(-y_i <theta, x_i>)
double loss(const Dataset& ds, const Vec& theta);

struct LossEval {
  double value;
  Vec gradient;
};

// Loss together with its gradient -(1/n) sum_i exp(-y_i <theta,x_i>) y_i x_i.
LossEval loss_grad(const Dataset& ds, const Vec& theta);

// min_i y_i <theta, x_i> / norm(n, theta). Requires theta != 0.
double normalized_margin(const Dataset& ds, const Vec& theta, const NormSpec& n);

} // namespace bregman
