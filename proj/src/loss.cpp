#include "bregman/loss.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bregman {

namespace {

double clamped_exp_neg_margin(const Vec& theta, const LabeledPoint& p) {
  const double m = p.y * dot(theta, p.x);
  return std::exp(-std::clamp(m, -kMarginClamp, kMarginClamp));
}

} // namespace

double loss(const Dataset& ds, const Vec& theta) {
  double s = 0.0;
  for (const LabeledPoint& p : ds.points()) s += clamped_exp_neg_margin(theta, p);
  return s / static_cast<double>(ds.size());
}

LossEval loss_grad(const Dataset& ds, const Vec& theta) {
  double s = 0.0;
  Vec g(ds.dim(), 0.0);
  for (const LabeledPoint& p : ds.points()) {
    const double e = clamped_exp_neg_margin(theta, p);
    s += e;
    axpy(g, -e * p.y, p.x);
  }
  const double inv_n = 1.0 / static_cast<double>(ds.size());
  for (double& v : g) v *= inv_n;
  return {s * inv_n, g};
}

double normalized_margin(const Dataset& ds, const Vec& theta, const NormSpec& n) {
  const double scale = norm(n, theta);
  if (scale <= 0.0)
    throw std::invalid_argument("normalized_margin: theta must be nonzero");
  double worst = std::numeric_limits<double>::infinity();
  for (const LabeledPoint& p : ds.points())
    worst = std::min(worst, p.y * dot(theta, p.x));
  return worst / scale;
}

} // namespace bregman
