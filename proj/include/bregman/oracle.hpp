#pragma once

#include "bregman/dataset.hpp"
#include "bregman/linalg.hpp"

namespace bregman {

// Result of a max-margin computation: u_star maximizes
// min_i y_i <u, x_i> over the unit ball of the given norm.
// For separable data gamma_star > 0, norm(N, u_star) = 1 and
// min_i y_i <u_star, x_i> equals gamma_star. For non-separable data
// feasible is false and gamma_star <= 0; u_star may be zero then.
struct MarginCertificate {
  Vec u_star;
  double gamma_star;
  bool feasible;
};

// L2 and Mahalanobis: hard-margin dual coordinate ascent, with Mahalanobis
// reduced to L2 by Cholesky whitening (A = R R^T, v = R^T u, points mapped
// through R^{-1}). L1 and LInf: the equivalent linear program solved by a
// dense bounded-variable simplex with Bland's rule.
MarginCertificate max_margin(const Dataset& ds, const NormSpec& n);

// Plane-only cross check: sweeps `resolution` directions on the unit
// circle, rescales each to unit N-norm and keeps the best minimum margin.
// Agreement with max_margin is limited by the angular spacing.
MarginCertificate grid_oracle(const Dataset& ds, const NormSpec& n,
                              std::size_t resolution);

} // namespace bregman
