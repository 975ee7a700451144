#pragma once

#include "bregman/linalg.hpp"

namespace bregman {

// Strong convexity / smoothness constants of a potential measured
// against a reference norm: mu/2 ||x-y||^2 <= D_w(x,y) <= L/2 ||x-y||^2.
struct ConvexityProfile {
  double mu_w;
  double l_w;
};

// Quadratic potential w(x) = <x, A x> with A symmetric positive definite.
// Gradient 2 A x, Bregman divergence D_w(x,y) = <x-y, A (x-y)>.
class QuadraticPotential {
 public:
  explicit QuadraticPotential(SymMatrix a);
  static QuadraticPotential identity(std::size_t dim);

  std::size_t dim() const { return a_.dim(); }
  const SymMatrix& matrix() const { return a_; }

  double value(const Vec& x) const;
  Vec grad(const Vec& x) const;
  // Inverse of the gradient map: returns x with 2 A x = z.
  Vec inv_grad(const Vec& z) const;
  double bregman(const Vec& x, const Vec& y) const;
  // Divergence of the convex conjugate w*(z) = <z, A^{-1} z>/4 between
  // dual points: <zx - zy, A^{-1}(zx - zy)>/4.
  double bregman_conjugate(const Vec& zx, const Vec& zy) const;
  double conjugate_value(const Vec& z) const;

  // A^{-1} v, via the cached Cholesky factor.
  Vec solve(const Vec& v) const;

 private:
  SymMatrix a_;
  CholeskyFactor chol_;
};

// Constants of P against norm N. Supported pairs: quadratic vs
// Mahalanobis(B) (exact, generalized eigenvalues of A against B),
// vs L2 (exact), vs L1 (norm-equivalence bounds, conservative).
// Anything else throws std::invalid_argument naming the pair.
ConvexityProfile convexity_profile(const QuadraticPotential& p, const NormSpec& n);

// Strong convexity constant against the plain l2 norm: 2 lambda_min(A).
double mu_against_l2(const QuadraticPotential& p);

} // namespace bregman
